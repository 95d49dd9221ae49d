#pragma once

#include <cmath>

#include <boost/multiprecision/cpp_int.hpp>

namespace pdlab::geom
{
struct Point
{
    double x = 0;
    double y = 0;

    friend bool operator==(Point const&, Point const&) = default;
};

namespace detail
{
using Exact = boost::multiprecision::cpp_rational;

//! Relative size below which a filtered determinant is recomputed exactly.
inline constexpr double kFilter = 1e-10;

inline int sign_of(Exact const& v)
{
    return v.sign();
}

inline int orient_exact(Point a, Point b, Point c)
{
    Exact ax(a.x), ay(a.y);
    Exact det = (Exact(b.x) - ax) * (Exact(c.y) - ay) - (Exact(b.y) - ay) * (Exact(c.x) - ax);
    return sign_of(det);
}

inline int incircle_exact(Point a, Point b, Point c, Point d)
{
    Exact dx(d.x), dy(d.y);
    Exact adx = Exact(a.x) - dx, ady = Exact(a.y) - dy;
    Exact bdx = Exact(b.x) - dx, bdy = Exact(b.y) - dy;
    Exact cdx = Exact(c.x) - dx, cdy = Exact(c.y) - dy;
    Exact alift = adx * adx + ady * ady;
    Exact blift = bdx * bdx + bdy * bdy;
    Exact clift = cdx * cdx + cdy * cdy;
    Exact det = alift * (bdx * cdy - cdx * bdy) + blift * (cdx * ady - adx * cdy)
                + clift * (adx * bdy - bdx * ady);
    return sign_of(det);
}
}  // namespace detail

/*!
 * Sign of the turn a -> b -> c: +1 counterclockwise, -1 clockwise, 0 collinear.
 *
 * The floating determinant is trusted when it clears a relative filter;
 * otherwise the sign is recomputed in exact rational arithmetic.
 */
inline int orient(Point a, Point b, Point c)
{
    double l = (b.x - a.x) * (c.y - a.y);
    double r = (b.y - a.y) * (c.x - a.x);
    double det = l - r;
    double perm = std::abs(l) + std::abs(r);
    if (std::abs(det) > detail::kFilter * perm)
        return det > 0 ? 1 : -1;
    return detail::orient_exact(a, b, c);
}

//! +1 if d lies strictly inside the circle through counterclockwise a, b, c.
inline int incircle(Point a, Point b, Point c, Point d)
{
    double adx = a.x - d.x, ady = a.y - d.y;
    double bdx = b.x - d.x, bdy = b.y - d.y;
    double cdx = c.x - d.x, cdy = c.y - d.y;
    double bc = bdx * cdy - cdx * bdy;
    double ca = cdx * ady - adx * cdy;
    double ab = adx * bdy - bdx * ady;
    double alift = adx * adx + ady * ady;
    double blift = bdx * bdx + bdy * bdy;
    double clift = cdx * cdx + cdy * cdy;
    double det = alift * bc + blift * ca + clift * ab;
    double perm = alift * (std::abs(bdx * cdy) + std::abs(cdx * bdy))
                  + blift * (std::abs(cdx * ady) + std::abs(adx * cdy))
                  + clift * (std::abs(adx * bdy) + std::abs(bdx * ady));
    if (std::abs(det) > detail::kFilter * perm)
        return det > 0 ? 1 : -1;
    return detail::incircle_exact(a, b, c, d);
}
}  // namespace pdlab::geom
