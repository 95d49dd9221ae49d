#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <boost/random/poisson_distribution.hpp>

#include "errors.hpp"
#include "exactlaw.hpp"
#include "predicates.hpp"
#include "rng.hpp"

namespace pdlab
{
namespace geom
{
//---------------------------------------------------------------------------//
// Window and point process
//---------------------------------------------------------------------------//
enum class TessMode
{
    plain,
    toroidal
};

inline char const* to_string(TessMode m)
{
    return m == TessMode::plain ? "plain" : "toroidal";
}

//! Square observation window [0, side)^2 with a minus-sampling guard.
struct SimWindow
{
    double side = 100;
    double guard = 0;
    TessMode mode = TessMode::plain;

    void validate() const
    {
        require(std::isfinite(side) && side > 0, "window: side must be > 0");
        require(guard >= 0 && guard < 0.5 * side, "window: need 0 <= guard < side/2");
        require(mode == TessMode::plain || guard == 0, "window: toroidal mode needs guard = 0");
    }

    bool in_guarded(Point c) const
    {
        double lo = guard, hi = side - guard;
        return c.x >= lo && c.x < hi && c.y >= lo && c.y < hi;
    }
};

//! Homogeneous Poisson process of intensity `gamma` on the window square.
inline std::vector<Point> sample_poisson_points(double gamma, SimWindow const& w, RngStream& rng)
{
    w.validate();
    require(std::isfinite(gamma) && gamma > 0, "poisson points: gamma must be > 0");
    double mean = gamma * w.side * w.side;
    require(mean >= 100, "poisson points: expected count gamma * side^2 must be >= 100");
    if (mean > 1e8)
        throw ResourceError("poisson points: expected count above 1e8");
    boost::random::poisson_distribution<std::int64_t, double> count_dist(mean);
    auto count = static_cast<std::size_t>(count_dist(rng));
    std::vector<Point> pts(count);
    for (auto& p : pts)
    {
        p.x = w.side * rng.uniform();
        p.y = w.side * rng.uniform();
    }
    return pts;
}

//---------------------------------------------------------------------------//
// Circumcircle
//---------------------------------------------------------------------------//
struct Circle
{
    Point center;
    double radius = 0;
};

/*!
 * Circle through three points.
 *
 * Triangles whose area is below 1e-12 of their squared extent are rejected
 * as collinear rather than given an enormous radius.
 */
inline Circle circumcircle(Point p, Point q, Point r)
{
    double bx = q.x - p.x, by = q.y - p.y;
    double cx = r.x - p.x, cy = r.y - p.y;
    double d = 2 * (bx * cy - by * cx);
    double ext = std::max({std::abs(bx), std::abs(by), std::abs(cx), std::abs(cy),
                           std::abs(r.x - q.x), std::abs(r.y - q.y)});
    if (!(std::abs(d) > 2e-12 * ext * ext))
        throw DomainError("circumcircle: points are collinear");
    double b2 = bx * bx + by * by;
    double c2 = cx * cx + cy * cy;
    double ux = (cy * b2 - by * c2) / d;
    double uy = (bx * c2 - cx * b2) / d;
    return {{p.x + ux, p.y + uy}, std::hypot(ux, uy)};
}

//---------------------------------------------------------------------------//
// Triangulation
//---------------------------------------------------------------------------//
struct Triangle
{
    std::array<int, 3> v{};  //!< counterclockwise indices into Triangulation::points
    Point center;
    double radius = 0;
    double area = 0;
};

struct Triangulation
{
    TessMode mode = TessMode::plain;
    double period = 0;             //!< torus side (toroidal only)
    std::vector<Point> points;     //!< input points, then periodic copies
    std::vector<int> origin;       //!< input index of each entry in `points`
    std::size_t input_count = 0;
    std::size_t hull_size = 0;     //!< plain only
    double margin = 0;             //!< replication margin (toroidal only)
    std::vector<Triangle> triangles;

    double total_area() const
    {
        double a = 0;
        for (auto const& t : triangles)
            a += t.area;
        return a;
    }
};

namespace detail
{
inline constexpr int kGhost = -1;

// Hilbert index of (x, y) on a 2^16 grid
inline std::uint64_t hilbert_key(std::uint32_t x, std::uint32_t y)
{
    std::uint64_t d = 0;
    for (std::uint32_t s = 1u << 15; s > 0; s >>= 1)
    {
        std::uint32_t rx = (x & s) ? 1 : 0;
        std::uint32_t ry = (y & s) ? 1 : 0;
        d += std::uint64_t(s) * s * ((3 * rx) ^ ry);
        if (ry == 0)
        {
            if (rx == 1)
            {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::swap(x, y);
        }
    }
    return d;
}

inline std::vector<int> spatial_order(std::vector<Point> const& pts)
{
    double xlo = std::numeric_limits<double>::infinity(), ylo = xlo;
    double xhi = -xlo, yhi = -xlo;
    for (auto const& p : pts)
    {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    double span = std::max({xhi - xlo, yhi - ylo, 1e-300});
    double scale = 65535.0 / span;
    std::vector<std::pair<std::uint64_t, int>> keyed(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
    {
        auto gx = static_cast<std::uint32_t>((pts[i].x - xlo) * scale);
        auto gy = static_cast<std::uint32_t>((pts[i].y - ylo) * scale);
        keyed[i] = {hilbert_key(gx, gy), static_cast<int>(i)};
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> order(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        order[i] = keyed[i].second;
    return order;
}

/*!
 * Incremental Bowyer-Watson triangulation with ghost triangles.
 *
 * Each hull edge carries a ghost triangle joined to a vertex at infinity,
 * so points outside the current hull are inserted by the same cavity
 * retriangulation as interior points and the result covers the convex
 * hull. A point is in conflict with a real triangle when it lies strictly
 * inside the circumcircle; cocircular points are left out of the cavity,
 * which keeps the output a function of the insertion order alone.
 */
class BowyerWatson
{
  public:
    explicit BowyerWatson(std::vector<Point> const& pts) : pts_(pts) {}

    void run()
    {
        require(pts_.size() >= 3, "delaunay: need at least 3 points");
        auto order = spatial_order(pts_);
        seed_triangle(order);
        for (int idx : order)
        {
            if (idx == s0_ || idx == s1_ || idx == s2_)
                continue;
            insert(idx);
        }
    }

    //! Live real triangles as counterclockwise vertex triples.
    std::vector<std::array<int, 3>> real_triangles() const
    {
        std::vector<std::array<int, 3>> out;
        for (std::size_t t = 0; t < tris_.size(); ++t)
            if (alive_[t] && !is_ghost(int(t)))
                out.push_back(tris_[t].v);
        return out;
    }

    std::size_t ghost_count() const
    {
        std::size_t g = 0;
        for (std::size_t t = 0; t < tris_.size(); ++t)
            g += alive_[t] && is_ghost(int(t));
        return g;
    }

  private:
    struct Cell
    {
        std::array<int, 3> v;
        std::array<int, 3> nb;  //!< neighbour across the edge opposite v[i]
    };

    std::vector<Point> const& pts_;
    std::vector<Cell> tris_;
    std::vector<char> alive_;
    std::vector<int> free_;
    std::vector<int> mark_;
    int stamp_ = 0;
    int last_ = 0;
    int s0_ = -1, s1_ = -1, s2_ = -1;

    // scratch
    std::vector<int> cavity_;
    struct BoundaryEdge
    {
        int a, b, outside;
    };
    std::vector<BoundaryEdge> boundary_;

    bool is_ghost(int t) const
    {
        auto const& v = tris_[t].v;
        return v[0] == kGhost || v[1] == kGhost || v[2] == kGhost;
    }

    int new_cell(int a, int b, int c)
    {
        int t;
        if (!free_.empty())
        {
            t = free_.back();
            free_.pop_back();
            tris_[t] = {{a, b, c}, {-1, -1, -1}};
            alive_[t] = 1;
            mark_[t] = 0;
        }
        else
        {
            t = int(tris_.size());
            tris_.push_back({{a, b, c}, {-1, -1, -1}});
            alive_.push_back(1);
            mark_.push_back(0);
        }
        return t;
    }

    void seed_triangle(std::vector<int> const& order)
    {
        s0_ = order[0];
        std::size_t i = 1;
        while (i < order.size() && pts_[order[i]] == pts_[s0_])
            ++i;
        require(i < order.size(), "delaunay: all points coincide");
        s1_ = order[i];
        std::size_t j = i + 1;
        while (j < order.size() && orient(pts_[s0_], pts_[s1_], pts_[order[j]]) == 0)
            ++j;
        if (j == order.size())
            throw DomainError("delaunay: all points are collinear");
        s2_ = order[j];
        if (orient(pts_[s0_], pts_[s1_], pts_[s2_]) < 0)
            std::swap(s1_, s2_);
        int a = s0_, b = s1_, c = s2_;
        int t = new_cell(a, b, c);
        int g0 = new_cell(c, b, kGhost);  // across edge b-c (opposite a)
        int g1 = new_cell(a, c, kGhost);  // across edge c-a
        int g2 = new_cell(b, a, kGhost);  // across edge a-b
        tris_[t].nb = {g0, g1, g2};
        // ghost (u, w, G): neighbour opposite G is the real triangle
        tris_[g0].nb = {g2, g1, t};
        tris_[g1].nb = {g0, g2, t};
        tris_[g2].nb = {g1, g0, t};
        last_ = t;
    }

    Point const& P(int i) const { return pts_[i]; }

    bool strictly_between(Point u, Point w, Point p) const
    {
        // p is collinear with u-w
        double t = (p.x - u.x) * (w.x - u.x) + (p.y - u.y) * (w.y - u.y);
        double len = (w.x - u.x) * (w.x - u.x) + (w.y - u.y) * (w.y - u.y);
        return t > 0 && t < len;
    }

    bool in_conflict(int t, Point p) const
    {
        auto const& v = tris_[t].v;
        for (int k = 0; k < 3; ++k)
        {
            if (v[k] != kGhost)
                continue;
            Point u = P(v[(k + 1) % 3]);
            Point w = P(v[(k + 2) % 3]);
            int o = orient(u, w, p);
            return o > 0 || (o == 0 && strictly_between(u, w, p));
        }
        return incircle(P(v[0]), P(v[1]), P(v[2]), p) > 0;
    }

    // visibility walk to a triangle in conflict with p
    int locate(Point p, int idx)
    {
        int t = last_;
        if (!alive_[t])
            t = 0;
        while (!alive_[t])
            ++t;
        if (is_ghost(t))
        {
            auto const& v = tris_[t].v;
            for (int k = 0; k < 3; ++k)
                if (v[k] == kGhost)
                    t = tris_[t].nb[k];
        }
        std::size_t const cap = 4 * tris_.size() + 16;
        for (std::size_t step = 0; step < cap; ++step)
        {
            auto const& c = tris_[t];
            int next = -1;
            for (int r = 0; r < 3; ++r)
            {
                int k = (r + int(step)) % 3;
                if (orient(P(c.v[(k + 1) % 3]), P(c.v[(k + 2) % 3]), p) < 0)
                {
                    next = c.nb[k];
                    break;
                }
            }
            if (next < 0)
            {
                for (int k = 0; k < 3; ++k)
                    if (P(c.v[k]) == p)
                        throw DomainError("delaunay: duplicate point at index "
                                          + std::to_string(idx));
                return t;
            }
            if (is_ghost(next))
                return next;
            t = next;
        }
        throw ConvergenceError("delaunay: point location did not terminate");
    }

    void insert(int idx)
    {
        Point p = P(idx);
        int seed = locate(p, idx);
        ++stamp_;
        cavity_.clear();
        boundary_.clear();
        cavity_.push_back(seed);
        mark_[seed] = stamp_;
        for (std::size_t q = 0; q < cavity_.size(); ++q)
        {
            int t = cavity_[q];
            for (int k = 0; k < 3; ++k)
            {
                int o = tris_[t].nb[k];
                if (mark_[o] == stamp_)
                    continue;
                if (in_conflict(o, p))
                {
                    mark_[o] = stamp_;
                    cavity_.push_back(o);
                }
            }
        }
        for (int t : cavity_)
        {
            for (int k = 0; k < 3; ++k)
            {
                int o = tris_[t].nb[k];
                if (mark_[o] == stamp_)
                    continue;
                boundary_.push_back({tris_[t].v[(k + 1) % 3], tris_[t].v[(k + 2) % 3], o});
            }
        }
        for (int t : cavity_)
        {
            alive_[t] = 0;
            free_.push_back(t);
        }
        // new triangles (a, b, p); link across a-b to the outside, then to each other
        std::vector<int> made(boundary_.size());
        for (std::size_t e = 0; e < boundary_.size(); ++e)
        {
            auto const& be = boundary_[e];
            int t = new_cell(be.a, be.b, idx);
            made[e] = t;
            tris_[t].nb[2] = be.outside;
            auto& ob = tris_[be.outside];
            for (int k = 0; k < 3; ++k)
            {
                int u = ob.v[(k + 1) % 3], w = ob.v[(k + 2) % 3];
                if (u == be.b && w == be.a)
                    ob.nb[k] = t;
            }
        }
        for (std::size_t e = 0; e < boundary_.size(); ++e)
        {
            // edge b -> p (opposite a) pairs with the triangle whose a is our b
            int b = boundary_[e].b;
            int a = boundary_[e].a;
            for (std::size_t f = 0; f < boundary_.size(); ++f)
            {
                if (boundary_[f].a == b)
                    tris_[made[e]].nb[0] = made[f];
                if (boundary_[f].b == a)
                    tris_[made[e]].nb[1] = made[f];
            }
        }
        last_ = made.front();
        for (int t : made)
            if (!is_ghost(t))
                last_ = t;
    }
};
}  // namespace detail

//! Circumdata and area of a counterclockwise triangle.
inline Triangle make_triangle(std::vector<Point> const& pts, std::array<int, 3> v)
{
    Point a = pts[v[0]], b = pts[v[1]], c = pts[v[2]];
    Circle cc = circumcircle(a, b, c);
    double area = 0.5 * ((b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x));
    return {v, cc.center, cc.radius, area};
}

namespace detail
{
inline Triangulation triangulate_plain(std::vector<Point> const& pts)
{
    BowyerWatson bw(pts);
    bw.run();
    Triangulation out;
    out.mode = TessMode::plain;
    out.points = pts;
    out.origin.resize(pts.size());
    std::iota(out.origin.begin(), out.origin.end(), 0);
    out.input_count = pts.size();
    out.hull_size = bw.ghost_count();
    for (auto const& v : bw.real_triangles())
        out.triangles.push_back(make_triangle(pts, v));
    return out;
}

// copies of points within `margin` of the torus seams
inline void replicate(std::vector<Point> const& base, double period, double margin,
                      std::vector<Point>& pts, std::vector<int>& origin)
{
    pts = base;
    origin.resize(base.size());
    std::iota(origin.begin(), origin.end(), 0);
    for (std::size_t i = 0; i < base.size(); ++i)
    {
        for (int dx = -1; dx <= 1; ++dx)
        {
            for (int dy = -1; dy <= 1; ++dy)
            {
                if (dx == 0 && dy == 0)
                    continue;
                Point q{base[i].x + dx * period, base[i].y + dy * period};
                if (q.x >= -margin && q.x < period + margin && q.y >= -margin
                    && q.y < period + margin)
                {
                    pts.push_back(q);
                    origin.push_back(int(i));
                }
            }
        }
    }
}
}  // namespace detail

/*!
 * Delaunay triangulation of a point set.
 *
 * Plain mode triangulates the convex hull. Toroidal mode treats the points
 * as one period of a lattice-periodic set on [0, period)^2: points near the
 * seams are replicated, and a triangle is kept when its circumcenter lies in
 * the fundamental square. The replication margin doubles until every kept
 * circumdisk fits inside the padded region and the kept areas tile the torus.
 */
inline Triangulation delaunay_triangulate(std::vector<Point> const& pts, TessMode mode,
                                          double period = 0)
{
    require(pts.size() >= 3, "delaunay: need at least 3 points");
    for (auto const& p : pts)
        require(std::isfinite(p.x) && std::isfinite(p.y), "delaunay: non-finite point");
    if (mode == TessMode::plain)
        return detail::triangulate_plain(pts);

    require(period > 0, "delaunay: toroidal mode needs a positive period");
    for (auto const& p : pts)
        require(p.x >= 0 && p.x < period && p.y >= 0 && p.y < period,
                "delaunay: toroidal points must lie in [0, period)^2");
    double const area_target = period * period;
    double margin = std::min(period, 4 * period / std::sqrt(double(pts.size())));
    for (;;)
    {
        Triangulation out;
        out.mode = TessMode::toroidal;
        out.period = period;
        out.input_count = pts.size();
        out.margin = margin;
        detail::replicate(pts, period, margin, out.points, out.origin);
        detail::BowyerWatson bw(out.points);
        bw.run();
        bool certified = true;
        for (auto const& v : bw.real_triangles())
        {
            Triangle t = make_triangle(out.points, v);
            Point c = t.center;
            if (!(c.x >= 0 && c.x < period && c.y >= 0 && c.y < period))
                continue;
            if (c.x - t.radius < -margin || c.x + t.radius > period + margin
                || c.y - t.radius < -margin || c.y + t.radius > period + margin)
                certified = false;
            out.triangles.push_back(t);
        }
        double area = out.total_area();
        if (certified && std::abs(area - area_target) <= 1e-9 * area_target)
            return out;
        if (margin >= period)
            throw ConvergenceError("delaunay: toroidal replication not certified at margin = period");
        margin = std::min(period, 2 * margin);
    }
}

//---------------------------------------------------------------------------//
// Audits
//---------------------------------------------------------------------------//
struct AuditResult
{
    std::size_t audited = 0;
    std::size_t violations = 0;
    double worst_relative_intrusion = 0;  //!< max (R - dist) / R over audited pairs
};

/*!
 * Empty-circumdisk audit.
 *
 * Each audited triangle is paired with the closest non-vertex point to its
 * circumcenter; a violation is that point lying inside the disk by more
 * than tol * radius. `count = 0` audits every triangle.
 */
inline AuditResult audit_empty_circumdisks(Triangulation const& tri, std::size_t count,
                                           RngStream& rng, double tol = 1e-9)
{
    require(!tri.triangles.empty(), "audit: empty triangulation");
    auto const& pts = tri.points;
    // bucket grid for nearest-point queries
    double xlo = std::numeric_limits<double>::infinity(), ylo = xlo, xhi = -xlo, yhi = -xlo;
    for (auto const& p : pts)
    {
        xlo = std::min(xlo, p.x);
        xhi = std::max(xhi, p.x);
        ylo = std::min(ylo, p.y);
        yhi = std::max(yhi, p.y);
    }
    int const g = std::max(1, int(std::sqrt(double(pts.size()) / 2)));
    double const cw = std::max((xhi - xlo), (yhi - ylo)) / g * (1 + 1e-12) + 1e-300;
    std::vector<std::vector<int>> cells(std::size_t(g) * g);
    auto cell_of = [&](double v, double lo) { return std::clamp(int((v - lo) / cw), 0, g - 1); };
    for (std::size_t i = 0; i < pts.size(); ++i)
        cells[std::size_t(cell_of(pts[i].y, ylo)) * g + cell_of(pts[i].x, xlo)].push_back(int(i));

    std::vector<std::size_t> pick;
    if (count == 0 || count >= tri.triangles.size())
    {
        pick.resize(tri.triangles.size());
        std::iota(pick.begin(), pick.end(), std::size_t(0));
    }
    else
    {
        for (std::size_t k = 0; k < count; ++k)
            pick.push_back(std::size_t(rng.uniform() * tri.triangles.size()));
    }

    AuditResult res;
    for (std::size_t ti : pick)
    {
        auto const& t = tri.triangles[ti];
        int x0 = cell_of(t.center.x - t.radius, xlo), x1 = cell_of(t.center.x + t.radius, xlo);
        int y0 = cell_of(t.center.y - t.radius, ylo), y1 = cell_of(t.center.y + t.radius, ylo);
        double closest = std::numeric_limits<double>::infinity();
        for (int cy = y0; cy <= y1; ++cy)
        {
            for (int cx = x0; cx <= x1; ++cx)
            {
                for (int i : cells[std::size_t(cy) * g + cx])
                {
                    if (i == t.v[0] || i == t.v[1] || i == t.v[2])
                        continue;
                    closest = std::min(closest, std::hypot(pts[i].x - t.center.x,
                                                           pts[i].y - t.center.y));
                }
            }
        }
        double intrusion = (t.radius - closest) / t.radius;
        ++res.audited;
        res.worst_relative_intrusion = std::max(res.worst_relative_intrusion, intrusion);
        if (intrusion > tol)
            ++res.violations;
    }
    return res;
}

//---------------------------------------------------------------------------//
// Typical-cell estimators
//---------------------------------------------------------------------------//
struct TypicalCellEstimate
{
    double mu = -1;
    double s = 1;
    double estimate = 0;
    double std_error = 0;
    std::size_t n_cells = 0;
    double effective_sample_size = 0;
};

namespace detail
{
inline constexpr int kBlocks = 8;
inline constexpr std::size_t kMinCells = 100;

struct WeightedCells
{
    std::vector<double> log_w;  //!< (mu + 1) log area, shifted by the maximum
    std::vector<std::size_t> index;
    std::vector<int> block;
};

inline WeightedCells weighted_cells(Triangulation const& tri, SimWindow const& w, double mu)
{
    w.validate();
    require(mu > -2, "typical cell: mu must be > -2");
    if (tri.mode == TessMode::toroidal)
        require(w.mode == TessMode::toroidal && std::abs(w.side - tri.period) <= 1e-12 * w.side,
                "typical cell: toroidal window must match the torus period");
    WeightedCells wc;
    double const lo = w.guard;
    double const span = w.side - 2 * w.guard;
    for (std::size_t i = 0; i < tri.triangles.size(); ++i)
    {
        auto const& t = tri.triangles[i];
        if (!w.in_guarded(t.center))
            continue;
        int bx = std::clamp(int((t.center.x - lo) / span * kBlocks), 0, kBlocks - 1);
        int by = std::clamp(int((t.center.y - lo) / span * kBlocks), 0, kBlocks - 1);
        wc.index.push_back(i);
        wc.block.push_back(by * kBlocks + bx);
        wc.log_w.push_back((mu + 1) * std::log(t.area));
    }
    if (wc.index.size() < kMinCells)
        throw DomainError("typical cell: only " + std::to_string(wc.index.size())
                          + " cells in the guarded window, need >= 100");
    double mx = *std::max_element(wc.log_w.begin(), wc.log_w.end());
    for (double& l : wc.log_w)
        l -= mx;
    return wc;
}

inline double effective_size(std::vector<double> const& wts)
{
    double s1 = 0, s2 = 0;
    for (double x : wts)
    {
        s1 += x;
        s2 += x * x;
    }
    return s1 * s1 / s2;
}
}  // namespace detail

/*!
 * Self-normalized estimate of E V(Z_mu)^s from one tessellation.
 *
 * Cells with circumcenter in the guarded window are weighted by
 * area^(mu + 1). The standard error is the delta-method ratio variance
 * over an 8 x 8 grid of spatial blocks.
 */
inline TypicalCellEstimate estimate_typical_moment(Triangulation const& tri, SimWindow const& w,
                                                   double mu, double s)
{
    require(std::isfinite(s), "typical cell: s must be finite");
    auto wc = detail::weighted_cells(tri, w, mu);
    int const nb = detail::kBlocks * detail::kBlocks;
    std::vector<double> num(nb, 0), den(nb, 0), wts(wc.index.size());
    for (std::size_t k = 0; k < wc.index.size(); ++k)
    {
        double area = tri.triangles[wc.index[k]].area;
        double wt = std::exp(wc.log_w[k]);
        wts[k] = wt;
        num[wc.block[k]] += wt * std::pow(area, s);
        den[wc.block[k]] += wt;
    }
    double sn = std::accumulate(num.begin(), num.end(), 0.0);
    double sd = std::accumulate(den.begin(), den.end(), 0.0);
    double r = sn / sd;
    int used = 0;
    double ss = 0;
    for (int b = 0; b < nb; ++b)
    {
        if (den[b] == 0)
            continue;
        ++used;
        double e = num[b] - r * den[b];
        ss += e * e;
    }
    double var = used > 1 ? ss * used / (used - 1) / (sd * sd) : 0;
    TypicalCellEstimate est;
    est.mu = mu;
    est.s = s;
    est.estimate = r;
    est.std_error = std::sqrt(var);
    est.n_cells = wc.index.size();
    est.effective_sample_size = detail::effective_size(wts);
    return est;
}

struct RadiusCdfEstimate
{
    std::vector<double> t;
    std::vector<double> empirical;
    std::vector<double> exact;
    double max_deviation = 0;
    double effective_sample_size = 0;
    std::size_t n_cells = 0;

    //! Deviation allowance of three weighted KS standard errors.
    double tolerance() const { return 3 / std::sqrt(effective_sample_size); }
};

//! Weighted empirical circumradius CDF against the closed form.
inline RadiusCdfEstimate estimate_radius_cdf(Triangulation const& tri, SimWindow const& w,
                                             double mu, double gamma,
                                             std::vector<double> const& t_grid)
{
    require(gamma > 0, "radius cdf: gamma must be > 0");
    require(!t_grid.empty(), "radius cdf: empty grid");
    auto wc = detail::weighted_cells(tri, w, mu);
    std::vector<std::pair<double, double>> rw(wc.index.size());
    std::vector<double> wts(wc.index.size());
    double total = 0;
    for (std::size_t k = 0; k < wc.index.size(); ++k)
    {
        double wt = std::exp(wc.log_w[k]);
        rw[k] = {tri.triangles[wc.index[k]].radius, wt};
        wts[k] = wt;
        total += wt;
    }
    std::sort(rw.begin(), rw.end());
    ModelParams const p = ModelParams::make(2, mu, gamma);
    RadiusCdfEstimate out;
    out.n_cells = wc.index.size();
    out.effective_sample_size = detail::effective_size(wts);
    std::vector<double> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    std::size_t j = 0;
    double acc = 0;
    for (double t : grid)
    {
        require(t >= 0, "radius cdf: grid values must be >= 0");
        while (j < rw.size() && rw[j].first <= t)
            acc += rw[j++].second;
        double emp = j == rw.size() ? 1.0 : acc / total;
        double ex = radius_cdf(p, t);
        out.t.push_back(t);
        out.empirical.push_back(emp);
        out.exact.push_back(ex);
        out.max_deviation = std::max(out.max_deviation, std::abs(emp - ex));
    }
    return out;
}
}  // namespace geom

using geom::delaunay_triangulate;
using geom::estimate_radius_cdf;
using geom::estimate_typical_moment;
using geom::sample_poisson_points;
}  // namespace pdlab
