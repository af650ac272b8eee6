#include "maxplus/scalar.hpp"

#include <cctype>
#include <cstdlib>
#include <cstdio>

namespace maxplus {

double spow(double x, double a)
{
    if (is_eps(x)) {
        if (!(a > 0.0)) {
            throw DomainError("spow: eps raised to a non-positive power is undefined");
        }
        return eps;
    }
    return a * x;
}

std::string format_scalar(double x)
{
    if (is_eps(x)) {
        return "eps";
    }
    char buf[64];
    for (int precision = 1; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, x);
        if (std::strtod(buf, nullptr) == x) {
            break;
        }
    }
    return buf;
}

double parse_scalar(const std::string& token)
{
    std::size_t begin = 0;
    std::size_t end = token.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(token[begin]))) {
        ++begin;
    }
    while (end > begin && std::isspace(static_cast<unsigned char>(token[end - 1]))) {
        --end;
    }
    const std::string trimmed = token.substr(begin, end - begin);
    if (trimmed == "eps") {
        return eps;
    }
    if (trimmed.empty()) {
        throw std::invalid_argument("empty scalar token");
    }
    std::size_t consumed = 0;
    double value = 0.0;
    try {
        value = std::stod(trimmed, &consumed);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad scalar token '" + trimmed + "'");
    }
    if (consumed != trimmed.size() || !std::isfinite(value)) {
        throw std::invalid_argument("bad scalar token '" + trimmed + "'");
    }
    return value;
}

}  // namespace maxplus
