#pragma once

// Exact text serialization helpers shared by the model formats.

#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>

#include "lfbo/core/errors.hpp"
#include "lfbo/core/search_space.hpp"

namespace lfbo::detail {

inline void write_double(std::ostream& os, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%a", v);
    os << buf;
}

inline std::string read_token(std::istream& is) {
    std::string tok;
    if (!(is >> tok)) throw ParseError("unexpected end of model stream");
    return tok;
}

inline double read_double(std::istream& is) {
    const auto tok = read_token(is);
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0') throw ParseError("bad number '" + tok + "' in model stream");
    return v;
}

inline std::size_t read_size(std::istream& is) {
    const auto tok = read_token(is);
    char* end = nullptr;
    const auto v = std::strtoull(tok.c_str(), &end, 10);
    if (end == tok.c_str() || *end != '\0') throw ParseError("bad count '" + tok + "' in model stream");
    return static_cast<std::size_t>(v);
}

inline void expect_token(std::istream& is, const std::string& want) {
    const auto tok = read_token(is);
    if (tok != want) throw ParseError("expected '" + want + "' in model stream, got '" + tok + "'");
}

inline void write_space(std::ostream& os, const SearchSpace& space) {
    os << "space " << space.dims() << '\n';
    for (std::size_t d = 0; d < space.dims(); ++d) {
        os << space.category_count(d) << ' ';
        write_double(os, space.bounds(d).lower);
        os << ' ';
        write_double(os, space.bounds(d).upper);
        os << '\n';
    }
}

inline SearchSpace read_space(std::istream& is) {
    expect_token(is, "space");
    const auto dims = read_size(is);
    std::vector<Bounds> bounds;
    std::vector<CategoricalDim> cats;
    for (std::size_t d = 0; d < dims; ++d) {
        const auto count = read_size(is);
        const double lo = read_double(is);
        const double hi = read_double(is);
        bounds.push_back({lo, hi});
        if (count > 0) cats.push_back({d, count});
    }
    return SearchSpace(std::move(bounds), std::move(cats));
}

}  // namespace lfbo::detail
