#include "maxplus/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace maxplus {

namespace {

void require_scalar_entries(std::span<const double> entries)
{
    for (double x : entries) {
        if (!is_scalar(x)) {
            throw DomainError("matrix entry must be finite or eps");
        }
    }
}

void require_same_shape(const Matrix& a, const Matrix& b, const char* what)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch");
    }
}

void require_square(const Matrix& a, const char* what)
{
    if (!a.is_square()) {
        throw DimensionError(std::string(what) + ": matrix must be square");
    }
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill)
{
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix dimensions must be positive");
    }
    if (!is_scalar(fill)) {
        throw DomainError("matrix entry must be finite or eps");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0)
{
    if (rows_ == 0 || cols_ == 0) {
        throw DimensionError("matrix dimensions must be positive");
    }
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_scalar_entries(data_);
}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries))
{
    if (rows == 0 || cols == 0) {
        throw DimensionError("matrix dimensions must be positive");
    }
    if (data_.size() != rows * cols) {
        throw DimensionError("entry count does not match rows x cols");
    }
    require_scalar_entries(data_);
}

Matrix Matrix::null(std::size_t rows, std::size_t cols) { return Matrix(rows, cols, eps); }

Matrix Matrix::identity(std::size_t n)
{
    Matrix e(n, n, eps);
    for (std::size_t i = 0; i < n; ++i) {
        e(i, i) = 0.0;
    }
    return e;
}

Matrix Matrix::zeros(std::size_t n) { return Matrix(n, 1, 0.0); }

Matrix Matrix::constant(std::size_t rows, std::size_t cols, double value)
{
    return Matrix(rows, cols, value);
}

double Matrix::at(std::size_t i, std::size_t j) const
{
    if (i >= rows_ || j >= cols_) {
        throw std::out_of_range("matrix index out of range");
    }
    return (*this)(i, j);
}

bool Matrix::all_finite() const noexcept
{
    return std::none_of(data_.begin(), data_.end(), is_eps);
}

Matrix mat_oplus(const Matrix& a, const Matrix& b)
{
    require_same_shape(a, b, "mat_oplus");
    Matrix c = a;
    auto out = c.entries();
    auto rhs = b.entries();
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = oplus(out[k], rhs[k]);
    }
    return c;
}

void mat_otimes_into(const Matrix& a, const Matrix& b, Matrix& out)
{
    if (a.cols() != b.rows()) {
        throw DimensionError("mat_otimes: inner dimensions differ");
    }
    if (out.rows() != a.rows() || out.cols() != b.cols()) {
        out = Matrix(a.rows(), b.cols(), eps);
    } else {
        std::fill(out.entries().begin(), out.entries().end(), eps);
    }
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (is_eps(aik)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) = oplus(out(i, j), otimes(aik, b(k, j)));
            }
        }
    }
}

Matrix mat_otimes(const Matrix& a, const Matrix& b)
{
    Matrix c(a.rows(), b.cols(), eps);
    mat_otimes_into(a, b, c);
    return c;
}

Matrix mat_pow(const Matrix& a, unsigned k)
{
    require_square(a, "mat_pow");
    Matrix result = Matrix::identity(a.rows());
    for (unsigned step = 0; step < k; ++step) {
        result = mat_otimes(result, a);
    }
    return result;
}

Matrix scale(double c, const Matrix& a)
{
    if (!is_scalar(c)) {
        throw DomainError("scale: factor must be finite or eps");
    }
    Matrix out = a;
    for (double& x : out.entries()) {
        x = otimes(c, x);
    }
    return out;
}

Matrix transpose(const Matrix& a)
{
    Matrix t(a.cols(), a.rows(), eps);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = a(i, j);
        }
    }
    return t;
}

Matrix conjugate(const Matrix& a)
{
    Matrix t(a.cols(), a.rows(), eps);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            t(j, i) = sinv(a(i, j));
        }
    }
    return t;
}

double norm(const Matrix& a) noexcept
{
    double best = eps;
    for (double x : a.entries()) {
        best = oplus(best, x);
    }
    return best;
}

double trace(const Matrix& a)
{
    require_square(a, "trace");
    double best = eps;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        best = oplus(best, a(i, i));
    }
    return best;
}

Matrix rowmax(const Matrix& a)
{
    Matrix r(a.rows(), 1, eps);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            r(i, 0) = oplus(r(i, 0), a(i, j));
        }
    }
    return r;
}

double spectral_radius(const Matrix& a)
{
    require_square(a, "spectral_radius");
    const std::size_t n = a.rows();
    double rho = eps;
    Matrix power = a;
    for (std::size_t m = 1; m <= n; ++m) {
        if (m > 1) {
            power = mat_otimes(power, a);
        }
        const double tr = trace(power);
        if (!is_eps(tr)) {
            rho = oplus(rho, spow(tr, 1.0 / static_cast<double>(m)));
        }
    }
    return rho;
}

bool leq(const Matrix& a, const Matrix& b)
{
    require_same_shape(a, b, "leq");
    auto lhs = a.entries();
    auto rhs = b.entries();
    for (std::size_t k = 0; k < lhs.size(); ++k) {
        if (lhs[k] > rhs[k]) {
            return false;
        }
    }
    return true;
}

std::string to_literal(const Matrix& a)
{
    std::string out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (i > 0) {
            out += ';';
        }
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j > 0) {
                out += ',';
            }
            out += format_scalar(a(i, j));
        }
    }
    return out;
}

Matrix parse_matrix(const std::string& text)
{
    std::vector<double> entries;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::stringstream row_stream(text);
    std::string row;
    while (std::getline(row_stream, row, ';')) {
        std::size_t count = 0;
        std::stringstream entry_stream(row);
        std::string token;
        while (std::getline(entry_stream, token, ',')) {
            entries.push_back(parse_scalar(token));
            ++count;
        }
        // getline drops a trailing empty field; "1,2," must not parse as 1x2
        if (!row.empty() && row.back() == ',') {
            throw std::invalid_argument("matrix literal has an empty entry");
        }
        if (rows == 0) {
            cols = count;
        } else if (count != cols) {
            throw std::invalid_argument("matrix literal rows have different lengths");
        }
        ++rows;
    }
    if (!text.empty() && text.back() == ';') {
        throw std::invalid_argument("matrix literal has an empty row");
    }
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("empty matrix literal");
    }
    return Matrix(rows, cols, std::move(entries));
}

}  // namespace maxplus
