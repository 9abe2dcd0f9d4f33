// Copyright 2026 The Strata Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "strata/errors.hpp"
#include "strata/format.hpp"
#include "strata/pauli.hpp"
#include "strata/states.hpp"

namespace strata {

// Model definition files are line oriented "key = value" records:
//
//   # thermal GHZ on three qubits
//   backend = stabilizer
//   n = 3
//   beta = 1.0
//   generator = +XXX
//   generator = ZZI
//   generator = Z_Z
//
// `backend = ring` needs n and beta. `backend = dense` takes one
// `entry = i j re [im]` line per nonzero matrix element (rows and columns in
// the little-endian basis, qubit j at bit j); missing elements are zero.

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view s, const std::string& where) {
    T v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw ParseError(where + ": bad number '" + std::string(s) + "'");
    }
    return v;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
        const std::size_t b = i;
        while (i < s.size() && s[i] != ' ' && s[i] != '\t') ++i;
        if (i > b) out.push_back(s.substr(b, i - b));
    }
    return out;
}

}  // namespace detail

inline StateBackend read_model(std::istream& in, const std::string& name = "<model>",
                               int dense_cap = kDefaultDenseCap) {
    std::string backend;
    std::optional<int> n;
    std::optional<double> beta;
    std::vector<PauliString> generators;
    struct Entry {
        long i, j;
        double re, im;
    };
    std::vector<Entry> entries;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string where = name + ":" + std::to_string(line_no);
        std::string_view s = line;
        if (const auto hash = s.find('#'); hash != std::string_view::npos) s = s.substr(0, hash);
        s = detail::trim(s);
        if (s.empty()) continue;
        const auto eq = s.find('=');
        if (eq == std::string_view::npos) throw ParseError(where + ": expected 'key = value'");
        const std::string_view key = detail::trim(s.substr(0, eq));
        const std::string_view value = detail::trim(s.substr(eq + 1));
        if (key == "backend") {
            backend = std::string(value);
        } else if (key == "n") {
            n = detail::parse_number<int>(value, where);
        } else if (key == "beta") {
            beta = detail::parse_number<double>(value, where);
        } else if (key == "generator") {
            try {
                generators.push_back(PauliString::parse(value));
            } catch (const Error& e) {
                throw ParseError(where + ": " + e.what());
            }
        } else if (key == "entry") {
            const auto parts = detail::split_ws(value);
            if (parts.size() != 3 && parts.size() != 4) throw ParseError(where + ": entry needs 'i j re [im]'");
            entries.push_back({detail::parse_number<long>(parts[0], where), detail::parse_number<long>(parts[1], where),
                               detail::parse_number<double>(parts[2], where),
                               parts.size() == 4 ? detail::parse_number<double>(parts[3], where) : 0.0});
        } else {
            throw ParseError(where + ": unknown key '" + std::string(key) + "'");
        }
    }

    if (backend == "stabilizer") {
        if (!beta) throw ParseError(name + ": stabilizer model needs beta");
        if (n && !generators.empty() && generators.front().n_qubits() != *n) {
            throw ParseError(name + ": generator size differs from n");
        }
        return StabilizerThermalState(std::move(generators), *beta);
    }
    if (backend == "ring") {
        if (!n || !beta) throw ParseError(name + ": ring model needs n and beta");
        return RingExcitationState(*n, *beta);
    }
    if (backend == "dense") {
        if (!n) throw ParseError(name + ": dense model needs n");
        if (*n < 1 || *n > dense_cap) throw CapExceededError(name + ": dense model exceeds cap");
        const long dim = 1L << *n;
        MatX rho = MatX::Zero(dim, dim);
        for (const auto& e : entries) {
            if (e.i < 0 || e.j < 0 || e.i >= dim || e.j >= dim) throw ParseError(name + ": entry index out of range");
            rho(e.i, e.j) = cplx(e.re, e.im);
        }
        return DenseState(std::move(rho), dense_cap);
    }
    if (backend.empty()) throw ParseError(name + ": missing backend");
    throw ParseError(name + ": unknown backend '" + backend + "'");
}

inline StateBackend load_model_file(const std::string& path, int dense_cap = kDefaultDenseCap) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file " + path);
    return read_model(in, path, dense_cap);
}

/// CSV with columns l (x/y letters, qubit 0 first) and T, in ascending y-mask order.
inline std::string correlator_table_csv(const CorrelatorTable& table) {
    std::ostringstream os;
    os << "l,T\n";
    for (const auto& [y, t] : table.entries()) os << XYString(table.n_qubits(), y).str() << ',' << format_real(t) << '\n';
    return os.str();
}

}  // namespace strata
