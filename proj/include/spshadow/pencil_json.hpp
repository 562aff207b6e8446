#pragma once

#include <string>

#include <json.hpp>

#include "spshadow/sympencil.hpp"

namespace spshadow {

namespace detail {

inline Rational rational_from_json(const nlohmann::ordered_json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(static_cast<long>(v.get<long long>()));
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const std::exception& e) {
            throw std::invalid_argument(where + ": " + e.what());
        }
    }
    throw std::invalid_argument(where + ": expected integer or \"a/b\" string, got " +
                                std::string(v.type_name()));
}

inline QMatrix matrix_from_json(const nlohmann::ordered_json& v, int n, const std::string& which) {
    if (!v.is_array() || static_cast<int>(v.size()) != n)
        throw std::invalid_argument(which + ": expected " + std::to_string(n) + " rows");
    QMatrix m;
    for (int i = 0; i < n; ++i) {
        const auto& row = v[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw std::invalid_argument(which + " row " + std::to_string(i) + ": expected " +
                                        std::to_string(n) + " entries");
        std::vector<Rational> r;
        for (int j = 0; j < n; ++j)
            r.push_back(rational_from_json(row[static_cast<std::size_t>(j)],
                                           which + " entry (" + std::to_string(i) + "," +
                                               std::to_string(j) + ")"));
        m.push_back(std::move(r));
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                m[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
                throw std::invalid_argument(which + " is not symmetric at entries (" +
                                            std::to_string(i) + "," + std::to_string(j) + ") / (" +
                                            std::to_string(j) + "," + std::to_string(i) + ")");
    return m;
}

inline nlohmann::ordered_json matrix_to_json(const QMatrix& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : m) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (const auto& v : r) {
            if (v.is_integer() && v.numerator().fits_slong_p())
                row.push_back(v.numerator().get_si());
            else
                row.push_back(v.to_string());
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace detail

/// Parses the pencil document {"n", "d", "p", "A": [...], "B": [...], "C": ...}
/// with matrices as row-major arrays of integer or "a/b" entries. Rationals
/// never pass through floating point.
inline SymPencil parse_pencil(const std::string& text) {
    nlohmann::ordered_json doc;
    try {
        doc = nlohmann::ordered_json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("pencil JSON: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("pencil JSON: top level must be an object");
    for (const char* key : {"n", "d", "p", "A", "B", "C"})
        if (!doc.contains(key))
            throw std::invalid_argument(std::string("pencil JSON: missing field \"") + key + "\"");
    if (!doc["n"].is_number_integer() || !doc["d"].is_number_integer() ||
        !doc["p"].is_number_integer())
        throw std::invalid_argument("pencil JSON: n, d, p must be integers");
    int n = doc["n"].get<int>(), d = doc["d"].get<int>(), p = doc["p"].get<int>();
    if (!doc["A"].is_array() || static_cast<int>(doc["A"].size()) != d)
        throw std::invalid_argument("pencil JSON: A must list exactly d matrices");
    if (!doc["B"].is_array() || static_cast<int>(doc["B"].size()) != p)
        throw std::invalid_argument("pencil JSON: B must list exactly p matrices");
    std::vector<QMatrix> A, B;
    for (int i = 0; i < d; ++i)
        A.push_back(detail::matrix_from_json(doc["A"][static_cast<std::size_t>(i)], n,
                                             "A" + std::to_string(i + 1)));
    for (int j = 0; j < p; ++j)
        B.push_back(detail::matrix_from_json(doc["B"][static_cast<std::size_t>(j)], n,
                                             "B" + std::to_string(j + 1)));
    QMatrix C = detail::matrix_from_json(doc["C"], n, "C");
    return SymPencil(n, d, p, std::move(A), std::move(B), std::move(C));
}

/// Lossless inverse of parse_pencil.
inline std::string emit_pencil(const SymPencil& P, int indent = 2) {
    nlohmann::ordered_json doc;
    doc["n"] = P.n;
    doc["d"] = P.d;
    doc["p"] = P.p;
    doc["A"] = nlohmann::ordered_json::array();
    for (const auto& a : P.A) doc["A"].push_back(detail::matrix_to_json(a));
    doc["B"] = nlohmann::ordered_json::array();
    for (const auto& b : P.B) doc["B"].push_back(detail::matrix_to_json(b));
    doc["C"] = detail::matrix_to_json(P.C);
    return doc.dump(indent);
}

}  // namespace spshadow
