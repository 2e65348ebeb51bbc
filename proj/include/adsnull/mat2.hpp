#ifndef ADSNULL_MAT2_HPP
#define ADSNULL_MAT2_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace adsnull {

// Minimal 2x2 matrix over double or std::complex<double>. Row-major.
template <typename T>
struct Mat2 {
    std::array<T, 4> a{};

    static Mat2 identity()
    {
        return Mat2{{T(1), T(0), T(0), T(1)}};
    }

    T &operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
    const T &operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }

    T det() const { return a[0] * a[3] - a[1] * a[2]; }

    Mat2 inverse() const
    {
        const T d = det();
        return Mat2{{a[3] / d, -a[1] / d, -a[2] / d, a[0] / d}};
    }

    friend Mat2 operator*(const Mat2 &x, const Mat2 &y)
    {
        return Mat2{{x.a[0] * y.a[0] + x.a[1] * y.a[2], x.a[0] * y.a[1] + x.a[1] * y.a[3],
                     x.a[2] * y.a[0] + x.a[3] * y.a[2], x.a[2] * y.a[1] + x.a[3] * y.a[3]}};
    }

    friend Mat2 operator+(const Mat2 &x, const Mat2 &y)
    {
        return Mat2{{x.a[0] + y.a[0], x.a[1] + y.a[1], x.a[2] + y.a[2], x.a[3] + y.a[3]}};
    }

    friend Mat2 operator-(const Mat2 &x, const Mat2 &y)
    {
        return Mat2{{x.a[0] - y.a[0], x.a[1] - y.a[1], x.a[2] - y.a[2], x.a[3] - y.a[3]}};
    }

    friend Mat2 operator*(const T &c, const Mat2 &x)
    {
        return Mat2{{c * x.a[0], c * x.a[1], c * x.a[2], c * x.a[3]}};
    }
};

using Mat2d = Mat2<double>;
using Mat2c = Mat2<std::complex<double>>;

inline double max_abs(const Mat2d &m)
{
    double r = 0;
    for (double v : m.a) {
        r = std::max(r, std::abs(v));
    }
    return r;
}

inline double max_abs(const Mat2c &m)
{
    double r = 0;
    for (const auto &v : m.a) {
        r = std::max(r, std::abs(v));
    }
    return r;
}

// Largest |imaginary part| over the entries.
inline double max_imag(const Mat2c &m)
{
    double r = 0;
    for (const auto &v : m.a) {
        r = std::max(r, std::abs(v.imag()));
    }
    return r;
}

inline Mat2d real_part(const Mat2c &m)
{
    return Mat2d{{m.a[0].real(), m.a[1].real(), m.a[2].real(), m.a[3].real()}};
}

inline Mat2c complexify(const Mat2d &m)
{
    return Mat2c{{m.a[0], m.a[1], m.a[2], m.a[3]}};
}

} // namespace adsnull

#endif
