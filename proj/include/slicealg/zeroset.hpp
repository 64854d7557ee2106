#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "slicealg/builtin.hpp"
#include "slicealg/division.hpp"
#include "slicealg/realpoly.hpp"
#include "slicealg/slice.hpp"

namespace slicealg {

// QuadricSet covers positive-dimensional zero sets cut out by a genuine
// quadric inside the solution flat (spheres, hyperboloids, paraboloids).
enum class ZeroKind { Empty, Point, PointPair, AffineSet, FullSphere, QuadricSet };
const char* kind_name(ZeroKind k);

template <class S>
struct AffineData {
    Element<S> base;  // a zero, as a point alpha + W
    std::vector<Element<S>> directions;
};

// Zeros alpha + base_w + sum c_i directions_i with
//   sum_ij quad[i][j] c_i c_j + sum_i lin[i] c_i + constant = 0.
template <class S>
struct QuadricData {
    Element<S> base;
    std::vector<Element<S>> directions;
    std::vector<std::vector<S>> quad;
    std::vector<S> lin;
    S constant{};
    std::optional<Element<S>> center;
    int positive = 0, negative = 0;  // inertia of quad
};

template <class S>
struct SphereZeroClass {
    ZeroKind kind = ZeroKind::Empty;
    std::vector<Element<S>> witnesses;  // exact zeros in rational mode
    std::vector<FElement> approx_witnesses;  // irrational zeros, rounded
    std::optional<AffineData<S>> affine;
    std::optional<QuadricData<S>> quadric;
    int dimension = 0;  // -1 for FullSphere
    int linear_rank = -1;
    std::string theorem_case;
    std::vector<std::string> notes;
    std::vector<Element<S>> conjugate_witnesses;  // zeros of f^c on the same sphere
    std::optional<bool> witnesses_commute;
    bool numeric = false;

    bool empty() const { return kind == ZeroKind::Empty; }
};

namespace detail {

// Points found by Newton iteration on a system of quadrics in r unknowns,
// rows laid out as [monomials c_i c_j (i <= j) | c_i | 1].
struct NumericQuadricResult {
    std::vector<std::vector<double>> points;
    std::vector<int> local_dims;
};
NumericQuadricResult numeric_quadric_solve(const std::vector<std::vector<double>>& rows, int r, unsigned long long seed);

template <class S>
Element<S> combine(const Element<S>& base, const std::vector<Element<S>>& dirs, const std::vector<S>& c) {
    Element<S> out = base;
    for (std::size_t i = 0; i < dirs.size(); ++i)
        if (!exactly_zero(c[i])) out += c[i] * dirs[i];
    return out;
}

template <class S>
bool w_on_sphere(const Element<S>& w, const S& beta_sq) {
    return trace(w).is_zero() && norm(w) == Element<S>::scalar(w.algebra_ptr(), beta_sq);
}

// f(alpha + W) = v_s f + W f'_s.
template <class S>
bool w_is_zero(const Element<S>& v, const Element<S>& d, const Element<S>& w, const S& beta_sq) {
    return w_on_sphere(w, beta_sq) && (v + w * d).is_zero();
}

template <class S>
struct Flat {
    Element<S> base;
    std::vector<Element<S>> dirs;
    int rank = 0;
};

template <class S>
Matrix<S> trace_matrix(const AlgebraPtr& a) {
    const int n = a->dim();
    Matrix<S> m(n, n);
    for (int j = 0; j < n; ++j) {
        const Element<S> ej = Element<S>::basis(a, j);
        const Element<S> t = ej + conj(ej);
        for (int r = 0; r < n; ++r) m(r, j) = t[r];
    }
    return m;
}

// {W : W d = -v, t(W) = 0, extra W = 0}.
template <class S>
std::optional<Flat<S>> linear_flat(const Element<S>& v, const Element<S>& d,
                                   const std::vector<std::vector<S>>& extra = {}) {
    const auto& a = v.algebra_ptr();
    const int n = a->dim();
    const Matrix<S> rd = right_mul_matrix(d), tm = trace_matrix<S>(a);
    Matrix<S> m;
    std::vector<S> b;
    for (int r = 0; r < n; ++r) {
        std::vector<S> row(n);
        for (int c = 0; c < n; ++c) row[c] = rd(r, c);
        m.append_row(row);
        b.push_back(-v[r]);
    }
    for (int r = 0; r < n; ++r) {
        std::vector<S> row(n);
        for (int c = 0; c < n; ++c) row[c] = tm(r, c);
        m.append_row(row);
        b.push_back(S(0));
    }
    for (const auto& row : extra) {
        m.append_row(row);
        b.push_back(S(0));
    }
    auto sol = solve(m, b);
    if (!sol) return std::nullopt;
    Flat<S> fl{Element<S>(a, sol->particular), {}, n - int(sol->directions.size())};
    for (auto& dir : sol->directions) fl.dirs.emplace_back(a, dir);
    return fl;
}

// One row per component of n(W) - beta^2 on the flat.
template <class S>
Matrix<S> quadric_rows(const Flat<S>& fl, const S& beta_sq) {
    const int r = int(fl.dirs.size()), m = r * (r + 1) / 2, n = fl.base.dim();
    Matrix<S> rows(n, m + r + 1);
    auto put = [&](int col, const Element<S>& e) {
        for (int k = 0; k < n; ++k) rows(k, col) = e[k];
    };
    std::vector<Element<S>> kc;
    for (const auto& k : fl.dirs) kc.push_back(conj(k));
    const Element<S> w0c = conj(fl.base);
    int col = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j)
            put(col++, i == j ? fl.dirs[i] * kc[i] : fl.dirs[i] * kc[j] + fl.dirs[j] * kc[i]);
    for (int i = 0; i < r; ++i) put(m + i, fl.base * kc[i] + fl.dirs[i] * w0c);
    Element<S> c0 = fl.base * w0c;
    c0[0] -= beta_sq;
    put(m + r, c0);
    return rows;
}

template <class S>
struct Reduced {
    bool empty = false;
    Flat<S> flat;
    Matrix<S> quad;  // rows with a nonzero quadratic part, reduced
};

// Eliminates the monomials; rows left without quadratic part are linear in
// the parameters and shrink the flat. Repeats until no such row remains.
template <class S>
Reduced<S> reduce(Flat<S> fl, const S& beta_sq) {
    const auto& a = fl.base.algebra_ptr();
    for (int guard = 0; guard <= a->dim() + 1; ++guard) {
        const int r = int(fl.dirs.size()), m = r * (r + 1) / 2;
        Matrix<S> rows = quadric_rows(fl, beta_sq);
        const double scale = pivot_scale(rows);
        const auto piv = rref(rows, m);
        Matrix<S> lin;
        std::vector<S> rhs;
        for (int k = int(piv.size()); k < rows.rows(); ++k) {
            std::vector<S> row(r);
            bool nz = false;
            for (int i = 0; i < r; ++i) {
                row[i] = rows(k, m + i);
                if (!negligible(row[i], scale)) nz = true;
            }
            if (!nz) {
                if (!negligible(rows(k, m + r), scale)) return {true, fl, {}};
                continue;
            }
            lin.append_row(row);
            rhs.push_back(-rows(k, m + r));
        }
        if (lin.rows() == 0) {
            Matrix<S> q(int(piv.size()), m + r + 1);
            for (int k = 0; k < q.rows(); ++k)
                for (int c = 0; c < q.cols(); ++c) q(k, c) = rows(k, c);
            return {false, fl, q};
        }
        auto sol = solve(lin, rhs);
        if (!sol) return {true, fl, {}};
        Flat<S> next{combine(fl.base, fl.dirs, sol->particular), {}, fl.rank + r - int(sol->directions.size())};
        for (const auto& dir : sol->directions) next.dirs.push_back(combine(Element<S>::zero(a), fl.dirs, dir));
        fl = std::move(next);
    }
    throw std::logic_error("zero-set reduction did not terminate");
}

template <class S>
S dot(const std::vector<S>& a, const std::vector<S>& b) {
    S s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Congruence diagonalization: vectors u_k with u_k^T M u_l = d_k delta_kl.
template <class S>
std::vector<std::pair<std::vector<S>, S>> diagonalize(const Matrix<S>& m) {
    const int r = m.rows();
    auto form = [&](const std::vector<S>& x, const std::vector<S>& y) {
        S s = 0;
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                if (!exactly_zero(m(i, j))) s += x[i] * m(i, j) * y[j];
        return s;
    };
    std::vector<std::vector<S>> pool;
    for (int i = 0; i < r; ++i) {
        std::vector<S> e(r, S(0));
        e[i] = 1;
        pool.push_back(e);
    }
    std::vector<std::pair<std::vector<S>, S>> out;
    while (!pool.empty()) {
        int pick = -1;
        for (int i = 0; i < int(pool.size()) && pick < 0; ++i)
            if (!ScalarTraits<S>::is_zero(form(pool[i], pool[i]))) pick = i;
        if (pick < 0) {
            for (int i = 0; i < int(pool.size()) && pick < 0; ++i)
                for (int j = i + 1; j < int(pool.size()); ++j)
                    if (!ScalarTraits<S>::is_zero(form(pool[i], pool[j]))) {
                        for (int k = 0; k < r; ++k) pool[i][k] += pool[j][k];
                        pick = i;
                        break;
                    }
        }
        if (pick < 0) {
            for (auto& u : pool) out.emplace_back(u, S(0));
            break;
        }
        std::vector<S> u = pool[pick];
        pool.erase(pool.begin() + pick);
        const S du = form(u, u);
        for (auto& w : pool) {
            const S f = form(w, u) / du;
            for (int k = 0; k < r; ++k) w[k] -= f * u[k];
        }
        out.emplace_back(std::move(u), du);
    }
    return out;
}

template <class S>
FElement to_felement(const Element<S>& x) {
    if constexpr (ScalarTraits<S>::exact) return to_float(x);
    else return x;
}

// Assembles points alpha + W from parameter vectors, keeping the ones that
// verify.
template <class S>
class WitnessSink {
public:
    WitnessSink(SphereZeroClass<S>& out, const SphereRef<S>& s, const Element<S>& v, const Element<S>& d,
                const Flat<S>& fl, std::size_t cap = 4)
        : out_(out), s_(s), v_(v), d_(d), fl_(fl), cap_(cap) {}

    bool full() const { return out_.witnesses.size() >= cap_; }

    void add_w(const Element<S>& w) {
        if (full() || !w_is_zero(v_, d_, w, s_.beta_sq)) return;
        const Element<S> x = Element<S>::scalar(w.algebra_ptr(), s_.alpha) + w;
        for (const auto& y : out_.witnesses)
            if (y == x) return;
        out_.witnesses.push_back(x);
    }
    void add_params(const std::vector<S>& c) { add_w(combine(fl_.base, fl_.dirs, c)); }
    void add_approx(const std::vector<double>& c) {
        if (out_.approx_witnesses.size() >= cap_) return;
        FElement w = to_felement(fl_.base);
        for (std::size_t i = 0; i < c.size(); ++i) w += c[i] * to_felement(fl_.dirs[i]);
        w[0] += ScalarTraits<S>::to_double(s_.alpha);
        out_.approx_witnesses.push_back(w);
    }
    // +-beta e_u for the basis units of S_A.
    void add_basis_units() {
        auto beta = s_.beta();
        if (!beta) return;
        const auto& a = v_.algebra_ptr();
        for (int u : a->unit_basis())
            for (int sign : {1, -1}) add_w(S(sign) * *beta * Element<S>::basis(a, u));
    }

private:
    SphereZeroClass<S>& out_;
    const SphereRef<S>& s_;
    const Element<S>& v_;
    const Element<S>& d_;
    const Flat<S>& fl_;
    std::size_t cap_;
};

template <class S>
std::vector<double> to_doubles(const std::vector<S>& c) {
    std::vector<double> out;
    for (const auto& x : c) out.push_back(ScalarTraits<S>::to_double(x));
    return out;
}

template <class S>
void numeric_fallback(SphereZeroClass<S>& out, const Reduced<S>& red, const SphereRef<S>& s, const Element<S>& v,
                      const Element<S>& d) {
    const Flat<S>& fl = red.flat;
    const int r = int(fl.dirs.size());
    std::vector<std::vector<double>> rows;
    for (int k = 0; k < red.quad.rows(); ++k) {
        std::vector<double> row;
        for (int c = 0; c < red.quad.cols(); ++c) row.push_back(ScalarTraits<S>::to_double(red.quad(k, c)));
        rows.push_back(std::move(row));
    }
    const auto res = numeric_quadric_solve(rows, r, sampling_seed());
    out.numeric = true;
    out.notes.push_back("classified by sampling: " + std::to_string(red.quad.rows()) + " quadrics in " +
                        std::to_string(r) + " parameters");
    if (res.points.empty()) {
        out.kind = ZeroKind::Empty;
        return;
    }
    int maxdim = 0;
    for (int dd : res.local_dims) maxdim = std::max(maxdim, dd);
    WitnessSink<S> sink(out, s, v, d, fl);
    sink.add_basis_units();
    for (const auto& p : res.points) {
        std::vector<S> c;
        for (double x : p) {
            auto approx = rational_approximations(x, 10000);
            c.push_back(ScalarTraits<S>::from(approx.empty() ? Rational(0) : approx.front()));
        }
        const std::size_t before = out.witnesses.size();
        sink.add_params(c);
        if constexpr (!ScalarTraits<S>::exact) {
            if (out.witnesses.size() == before) {
                std::vector<S> raw(p.begin(), p.end());
                sink.add_params(raw);
            }
        }
        if (out.witnesses.size() == before) sink.add_approx(p);
    }
    if (maxdim > 0) {
        out.kind = ZeroKind::QuadricSet;
        out.dimension = maxdim;
    } else {
        const std::size_t count = res.points.size();
        out.kind = count == 1 ? ZeroKind::Point : count == 2 ? ZeroKind::PointPair : ZeroKind::QuadricSet;
        out.dimension = 0;
    }
}

// Intersection of the flat {W d = -v, t(W) = 0} with n(W) = beta^2.
template <class S>
SphereZeroClass<S> classify_flat(const SphereRef<S>& s, const Element<S>& v, const Element<S>& d,
                                 const Flat<S>& flat0) {
    SphereZeroClass<S> out;
    out.linear_rank = flat0.rank;
    const Reduced<S> red = reduce(flat0, s.beta_sq);
    if (red.empty) return out;
    const Flat<S>& fl = red.flat;
    const AlgebraPtr& a = fl.base.algebra_ptr();
    const int r = int(fl.dirs.size()), q = red.quad.rows(), m = r * (r + 1) / 2;
    WitnessSink<S> sink(out, s, v, d, fl);
    const Element<S> alpha = Element<S>::scalar(a, s.alpha);

    if (r == 0 || q == 0) {
        sink.add_w(fl.base);
        if (r == 0) {
            out.kind = ZeroKind::Point;
        } else {
            out.kind = ZeroKind::AffineSet;
            out.dimension = r;
            out.affine = AffineData<S>{alpha + fl.base, fl.dirs};
        }
        return out;
    }
    if (r == 1) {
        // q c^2 + l c + e = 0 with the leading coefficient normalized by rref.
        const S qa = red.quad(0, 0), lb = red.quad(0, 1), e = red.quad(0, 2);
        const S disc = lb * lb - S(4) * qa * e;
        const int sd = ScalarTraits<S>::sign(disc);
        if (sd < 0) return out;
        if (sd == 0) {
            sink.add_params({-lb / (S(2) * qa)});
            out.kind = ZeroKind::Point;
            return out;
        }
        out.kind = ZeroKind::PointPair;
        if (auto root = ScalarTraits<S>::sqrt(disc)) {
            std::vector<S> c1{(-lb - *root) / (S(2) * qa)}, c2{(-lb + *root) / (S(2) * qa)};
            if (ScalarTraits<S>::to_double(c2[0]) < ScalarTraits<S>::to_double(c1[0])) std::swap(c1, c2);
            sink.add_params(c1);
            sink.add_params(c2);
        } else {
            const double qd = ScalarTraits<S>::to_double(qa), ld = ScalarTraits<S>::to_double(lb);
            const double rd = std::sqrt(ScalarTraits<S>::to_double(disc));
            sink.add_approx({(-ld - rd) / (2 * qd)});
            sink.add_approx({(-ld + rd) / (2 * qd)});
        }
        return out;
    }
    if (q > 1) {
        numeric_fallback(out, red, s, v, d);
        return out;
    }

    // A single quadric c^T M c + l.c + e = 0 in r >= 2 parameters.
    Matrix<S> M(r, r);
    std::vector<S> l(r);
    {
        int idx = 0;
        for (int i = 0; i < r; ++i)
            for (int j = i; j < r; ++j, ++idx) {
                if (i == j) M(i, i) = red.quad(0, idx);
                else M(i, j) = M(j, i) = red.quad(0, idx) / S(2);
            }
        for (int i = 0; i < r; ++i) l[i] = red.quad(0, m + i);
    }
    const S e = red.quad(0, m + r);
    auto Q = [&](const std::vector<S>& c) {
        S val = e + dot(l, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) val += M(i, j) * c[i] * c[j];
        return val;
    };
    QuadricData<S> qd;
    qd.base = fl.base;
    qd.directions = fl.dirs;
    qd.quad.assign(r, std::vector<S>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) qd.quad[i][j] = M(i, j);
    qd.lin = l;
    qd.constant = e;
    const auto diag = diagonalize(M);
    for (const auto& [u, du] : diag) {
        const int sg = ScalarTraits<S>::sign(du);
        if (sg > 0) ++qd.positive;
        if (sg < 0) ++qd.negative;
    }
    std::vector<S> half_l(r);
    for (int i = 0; i < r; ++i) half_l[i] = -l[i] / S(2);
    const auto centre = solve(M, half_l);

    sink.add_basis_units();
    auto finish_quadric = [&](const std::vector<S>& c0, const S& e0) {
        // Axis points c0 + t u with t^2 = -e0 / d_u.
        for (const auto& [u, du] : diag) {
            if (sink.full()) break;
            if (ScalarTraits<S>::is_zero(du)) continue;
            const S t2 = -e0 / du;
            if (ScalarTraits<S>::sign(t2) < 0) continue;
            if (auto t = ScalarTraits<S>::sqrt(t2)) {
                for (int sg : {1, -1}) {
                    std::vector<S> c = c0;
                    for (int i = 0; i < r; ++i) c[i] += S(sg) * *t * u[i];
                    sink.add_params(c);
                }
            } else if (out.witnesses.empty()) {
                const double td = std::sqrt(ScalarTraits<S>::to_double(t2));
                for (int sg : {1, -1}) {
                    std::vector<double> c = to_doubles(c0);
                    for (int i = 0; i < r; ++i) c[i] += sg * td * ScalarTraits<S>::to_double(u[i]);
                    sink.add_approx(c);
                }
            }
        }
        out.kind = ZeroKind::QuadricSet;
        out.dimension = r - 1;
    };

    if (!centre) {
        // The linear part leaves the range of M: a paraboloid, and a kernel
        // vector u with l.u != 0 gives the rational zero -e/(l.u) u.
        for (const auto& u : kernel(M)) {
            const S lu = dot(l, u);
            if (ScalarTraits<S>::is_zero(lu)) continue;
            std::vector<S> c = u;
            for (auto& x : c) x *= -e / lu;
            sink.add_params(c);
            break;
        }
        out.kind = ZeroKind::QuadricSet;
        out.dimension = r - 1;
        out.quadric = qd;
        out.notes.push_back("paraboloid: linear term outside the range of the quadratic form");
        return out;
    }
    const std::vector<S>& cs = centre->particular;
    const S e0 = Q(cs);
    qd.center = alpha + combine(fl.base, fl.dirs, cs);
    const int se = ScalarTraits<S>::sign(e0);
    if (qd.positive > 0 && qd.negative > 0) {
        if (se == 0) sink.add_params(cs);
        finish_quadric(cs, e0);
        out.quadric = qd;
        return out;
    }
    const int definite = qd.positive > 0 ? 1 : -1;
    if (se * definite > 0) {
        out = SphereZeroClass<S>{};
        out.linear_rank = flat0.rank;
        return out;
    }
    if (se == 0) {
        out.witnesses.clear();
        sink.add_params(cs);
        std::vector<Element<S>> dirs;
        for (const auto& u : centre->directions) dirs.push_back(combine(Element<S>::zero(a), fl.dirs, u));
        if (dirs.empty()) {
            out.kind = ZeroKind::Point;
        } else {
            out.kind = ZeroKind::AffineSet;
            out.dimension = int(dirs.size());
            out.affine = AffineData<S>{alpha + combine(fl.base, fl.dirs, cs), dirs};
        }
        return out;
    }
    finish_quadric(cs, e0);
    out.quadric = qd;
    return out;
}

template <class S>
SphereZeroClass<S> classify_parts(const SphereRef<S>& s, const Element<S>& v, const Element<S>& d,
                                  const std::vector<std::vector<S>>& extra = {}) {
    const auto& a = v.algebra_ptr();
    SphereZeroClass<S> out;
    if (d.is_zero()) {
        if (v.is_zero()) {
            out.kind = ZeroKind::FullSphere;
            out.dimension = -1;
            out.theorem_case = "1(a)";
            if (auto beta = s.beta())
                for (int u : a->unit_basis()) {
                    out.witnesses.push_back(Element<S>::scalar(a, s.alpha) + *beta * Element<S>::basis(a, u));
                    break;
                }
        } else {
            out.theorem_case = "1(b)";
        }
        return out;
    }
    const bool invertible = try_invert(d).has_value();
    const bool right_zd = !invertible && is_zero_divisor(d).right;
    auto fl = linear_flat(v, d, extra);
    if (fl) {
        out = classify_flat(s, v, d, *fl);
    } else {
        out.linear_rank = -1;
    }
    out.theorem_case = std::string(right_zd ? "2" : "3") + (out.empty() ? "(b)" : "(a)");
    return out;
}

}  // namespace detail

// V(f) on the sphere alpha + beta S_A.
template <class S>
SphereZeroClass<S> zeros_on_sphere(const SliceFunction<S>& f, const SphereRef<S>& s) {
    if (ScalarTraits<S>::sign(s.beta_sq) < 0) throw DomainError("sphere with negative beta^2");
    const double al = ScalarTraits<S>::to_double(s.alpha), be = std::sqrt(ScalarTraits<S>::to_double(s.beta_sq));
    if (!f.contains(al, be)) throw DomainError("sphere outside the stem domain");
    const auto& a = f.algebra();
    if (s.is_real()) {
        const Element<S> x = Element<S>::scalar(a, s.alpha);
        const Element<S> val = f.is_poly() ? evaluate(f, x) : f.stem(s.alpha, S(0)).first;
        SphereZeroClass<S> out;
        if (val.is_zero()) {
            out.kind = ZeroKind::Point;
            out.witnesses.push_back(x);
            out.theorem_case = "1(a)";
        } else {
            out.theorem_case = "1(b)";
        }
        return out;
    }
    auto [v, d] = f.spherical_parts(s);
    return detail::classify_parts(s, v, d);
}

// Same contract, with the closed-form 2-plane of the split octonions when
// f'_s is a zero divisor. Elements are split as c + l d with c, d in H.
template <class S>
SphereZeroClass<S> so_sphere_structure(const SliceFunction<S>& f, const SphereRef<S>& s) {
    const auto& a = f.algebra();
    if (a->name() != "SO") throw AlgebraMismatch("so_sphere_structure needs SO, got " + a->name());
    SphereZeroClass<S> generic = zeros_on_sphere(f, s);
    if (s.is_real()) return generic;
    auto [v, d] = f.spherical_parts(s);
    if (d.is_zero() || try_invert(d)) {
        if (generic.kind == ZeroKind::Point) generic.theorem_case = "SO case 2";
        else if (generic.kind == ZeroKind::FullSphere) generic.theorem_case = "SO case 4";
        else generic.theorem_case = "SO case 1";
        return generic;
    }
    const AlgebraPtr h = make_builtin("H");
    auto half = [&](const Element<S>& x, int off) {
        std::vector<S> c(4);
        for (int i = 0; i < 4; ++i) c[i] = x[off + i];
        return Element<S>(h, c);
    };
    auto join = [&](const Element<S>& p, const Element<S>& q) {
        std::vector<S> c(8);
        for (int i = 0; i < 4; ++i) {
            c[i] = p[i];
            c[4 + i] = q[i];
        }
        return Element<S>(a, c);
    };
    const Element<S> c = half(d, 0), dp = half(d, 4);
    const Element<S> nv = -v;
    const Element<S> R = half(nv, 4);
    // W = A + lB with A in Im H. The l-part of W d = -v gives
    // B = c^{-1}(R + A dp); with n(c) = n(dp) = nu the norm condition
    // n(A) - n(B) = beta^2 becomes 2<R, A dp> = -nu beta^2 - n(R).
    const Element<S> cinv = invert(c);
    const S nu = norm(c)[0];
    auto inner = [](const Element<S>& p, const Element<S>& q) {
        S sum = 0;
        for (int i = 0; i < 4; ++i) sum += p[i] * q[i];
        return sum;
    };
    Matrix<S> phi(1, 3);
    for (int m = 0; m < 3; ++m) phi(0, m) = S(2) * inner(R, Element<S>::basis(h, m + 1) * dp);
    const S target = -nu * s.beta_sq - inner(R, R);
    auto sol = solve(phi, {target});
    SphereZeroClass<S> out;
    out.theorem_case = "SO case 1";
    out.linear_rank = generic.linear_rank;
    auto w_of = [&](const std::vector<S>& coords, bool affine) {
        std::vector<S> ac(4, S(0));
        for (int m = 0; m < 3; ++m) ac[m + 1] = coords[m];
        const Element<S> A(h, ac);
        const Element<S> B = cinv * ((affine ? R : Element<S>::zero(h)) + A * dp);
        return join(A, B);
    };
    if (sol && sol->directions.size() == 2) {
        const Element<S> w0 = w_of(sol->particular, true);
        std::vector<Element<S>> dirs;
        for (const auto& u : sol->directions) dirs.push_back(w_of(u, false));
        bool ok = detail::w_is_zero(v, d, w0, s.beta_sq);
        for (const auto& u : dirs) ok = ok && detail::w_is_zero(v, d, Element<S>(w0 + u), s.beta_sq);
        if (ok) {
            out.kind = ZeroKind::AffineSet;
            out.dimension = 2;
            out.theorem_case = "SO case 3";
            const Element<S> x0 = Element<S>::scalar(a, s.alpha) + w0;
            out.witnesses.push_back(x0);
            out.affine = AffineData<S>{x0, dirs};
        }
    }
    if (out.kind != generic.kind || out.dimension != generic.dimension) {
        generic.notes.push_back("closed-form 2-plane disagrees with the generic classification");
        return generic;
    }
    return out;
}

namespace detail {

// h in R_2 = span{1, e1, e2, e12} with d = (1 + sign e123) h.
template <class S>
std::optional<Element<S>> r3_factor(const Element<S>& d) {
    const auto& a = d.algebra_ptr();
    const int e123 = a->basis_index("e123");
    const int sub[4] = {0, a->basis_index("e1"), a->basis_index("e2"), a->basis_index("e12")};
    for (int sign : {1, -1}) {
        Element<S> p = Element<S>::one(a);
        p[e123] = S(sign);
        Matrix<S> m(8, 4);
        for (int j = 0; j < 4; ++j) {
            const Element<S> col = p * Element<S>::basis(a, sub[j]);
            for (int r = 0; r < 8; ++r) m(r, j) = col[r];
        }
        auto sol = solve(m, d.coeffs());
        if (!sol || !sol->directions.empty()) continue;
        Element<S> hh = Element<S>::zero(a);
        for (int j = 0; j < 4; ++j) hh[sub[j]] = sol->particular[j];
        if (try_invert(hh)) return hh;
    }
    return std::nullopt;
}

}  // namespace detail

// The R_3 = CL(0,3) classification with the companion zeros of f^c.
// When f'_s is a zero divisor, the witnesses are a zero y and its commuting
// partner z with (y - z) f'_s = 0; the kind reports the full zero set found
// by the generic routine.
template <class S>
SphereZeroClass<S> r3_sphere_structure(const SliceFunction<S>& f, const SphereRef<S>& s) {
    const auto& a = f.algebra();
    if (a->name() != "CL(0,3)") throw AlgebraMismatch("r3_sphere_structure needs R3 = CL(0,3), got " + a->name());
    SphereZeroClass<S> out = zeros_on_sphere(f, s);
    if (s.is_real() || out.kind == ZeroKind::FullSphere) return out;
    auto [v, d] = f.spherical_parts(s);
    const SliceFunction<S> fc = slice_conjugate(f);
    auto [vc, dc] = fc.spherical_parts(s);
    const Element<S> alpha = Element<S>::scalar(a, s.alpha);
    auto fc_vanishes = [&](const Element<S>& x) { return detail::w_is_zero(vc, dc, Element<S>(x - alpha), s.beta_sq); };
    if (auto dinv = try_invert(d)) {
        for (const auto& y : out.witnesses) {
            const Element<S> yc = *dinv * conj(y) * d;
            if (!fc_vanishes(yc)) throw DomainError("r3_sphere_structure: conjugate zero does not vanish");
            out.conjugate_witnesses.push_back(yc);
        }
        return out;
    }
    if (out.empty()) return out;
    auto h = detail::r3_factor(d);
    if (!h) throw DomainError("r3_sphere_structure: f'_s is a zero divisor not of the form (1 +- e123)h");
    if (out.witnesses.empty()) {
        out.notes.push_back("no exact zero found on this sphere; partner not computed");
        return out;
    }
    const Element<S> y = out.witnesses.front();
    // Partner: zeros commuting with y.
    const Element<S> wy = y - alpha;
    const Matrix<S> lm = left_mul_matrix(wy), rm = right_mul_matrix(wy);
    std::vector<std::vector<S>> extra;
    for (int r = 0; r < a->dim(); ++r) {
        std::vector<S> row(a->dim());
        for (int c = 0; c < a->dim(); ++c) row[c] = rm(r, c) - lm(r, c);
        extra.push_back(std::move(row));
    }
    const auto commuting = detail::classify_parts(s, v, d, extra);
    std::optional<Element<S>> z;
    for (const auto& cand : commuting.witnesses)
        if (cand != y && cand != conj(y)) z = cand;
    if (!z) {
        out.notes.push_back("no commuting partner found for the first zero");
        return out;
    }
    out.witnesses = {y, *z};
    out.witnesses_commute = commutator(y, *z).is_zero();
    const Element<S> hinv = invert(*h);
    for (const auto& p : out.witnesses) {
        const Element<S> pc = hinv * conj(p) * *h;
        if (!fc_vanishes(pc)) throw DomainError("r3_sphere_structure: h-conjugate does not vanish on f^c");
        out.conjugate_witnesses.push_back(pc);
    }
    if (out.kind != ZeroKind::PointPair)
        out.notes.push_back("zero set on this sphere has dimension " + std::to_string(out.dimension) +
                            ", not the two points {y, z}; y and z are one commuting pair in it");
    return out;
}

// Equal zero sets up to witness order.
template <class S>
bool same_zero_set(const SphereZeroClass<S>& a, const SphereZeroClass<S>& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ZeroKind::Empty:
        case ZeroKind::FullSphere:
            return true;
        case ZeroKind::Point:
        case ZeroKind::PointPair: {
            if (a.witnesses.size() != b.witnesses.size()) return false;
            for (const auto& x : a.witnesses)
                if (std::find(b.witnesses.begin(), b.witnesses.end(), x) == b.witnesses.end()) return false;
            return true;
        }
        default:
            return a.dimension == b.dimension;
    }
}

// camshaft prediction for V(f.g) on one sphere.
template <class S>
struct ProductPrediction {
    std::optional<SphereZeroClass<S>> predicted;  // nullopt: unclassified
    std::optional<Element<S>> formula_witness;
    bool inclusion_only = false;  // predicted is an upper bound
    std::string theorem;
    std::string reason;
    SphereZeroClass<S> f_zeros, g_zeros, actual;
    bool agrees = false;
};

template <class S>
ProductPrediction<S> product_zero_predict(const SliceFunction<S>& f, const SliceFunction<S>& g,
                                          const SphereRef<S>& s) {
    ProductPrediction<S> out;
    const auto& a = f.algebra();
    const SliceFunction<S> fg = slice_product(f, g);
    out.f_zeros = zeros_on_sphere(f, s);
    out.g_zeros = zeros_on_sphere(g, s);
    out.actual = zeros_on_sphere(fg, s);
    const Element<S> alpha = Element<S>::scalar(a, s.alpha);
    auto point = [](const Element<S>& x) {
        SphereZeroClass<S> c;
        c.kind = ZeroKind::Point;
        c.witnesses.push_back(x);
        return c;
    };
    auto kind_only = [](ZeroKind k) {
        SphereZeroClass<S> c;
        c.kind = k;
        if (k == ZeroKind::FullSphere) c.dimension = -1;
        return c;
    };
    auto in_sphere = [&](const Element<S>& w) { return detail::w_on_sphere(Element<S>(w - alpha), s.beta_sq); };
    const bool f_empty = out.f_zeros.empty(), g_empty = out.g_zeros.empty();
    auto vfg_empty = [&]() -> bool {
        if (!is_tame(f) || !is_tame(g)) return false;
        return zeros_on_sphere(normal(f), s).empty() && zeros_on_sphere(normal(g), s).empty();
    };

    auto decide = [&]() {
        if (s.is_real()) {
            if (!f_empty || !g_empty) {
                out.theorem = "camshaft real point";
                out.predicted = point(alpha);
            } else if (vfg_empty()) {
                out.theorem = "outside V(N(f)) and V(N(g))";
                out.predicted = kind_only(ZeroKind::Empty);
            } else {
                out.reason = "real point outside V(f) and V(g) with N(f) or N(g) vanishing there";
            }
            return;
        }
        if (out.f_zeros.kind == ZeroKind::FullSphere || out.g_zeros.kind == ZeroKind::FullSphere) {
            out.theorem = "camshaft 1";
            out.predicted = kind_only(ZeroKind::FullSphere);
            return;
        }
        auto [vf, df] = f.spherical_parts(s);
        auto [vg, dg] = g.spherical_parts(s);
        auto [vfg, dfg] = fg.spherical_parts(s);
        (void)vfg;
        const bool single_f = out.f_zeros.kind == ZeroKind::Point && out.f_zeros.witnesses.size() == 1;
        const bool single_g = out.g_zeros.kind == ZeroKind::Point && out.g_zeros.witnesses.size() == 1;
        if (a->is_associative() && cone_membership(df).in_CA && cone_membership(dg).in_CA &&
            cone_membership(dfg).in_CA) {
            if (single_f && g_empty) {
                out.theorem = "camshaft associative 2";
                out.predicted = point(out.f_zeros.witnesses[0]);
                return;
            }
            if (f_empty && single_g) {
                const Element<S>& z = out.g_zeros.witnesses[0];
                const Element<S> fcz = evaluate(slice_conjugate(f), z);
                auto inv = try_invert(fcz);
                if (!inv) {
                    out.reason = "f^c(z) is not invertible";
                    return;
                }
                out.theorem = "camshaft associative 3";
                out.formula_witness = *inv * z * fcz;
                out.predicted = point(*out.formula_witness);
                return;
            }
            if (single_f && single_g) {
                const Element<S>& y = out.f_zeros.witnesses[0];
                const Element<S>& z = out.g_zeros.witnesses[0];
                if (conj(y) * df == df * z) {
                    out.theorem = "camshaft associative 4(a)";
                    out.predicted = kind_only(ZeroKind::FullSphere);
                } else {
                    out.theorem = "camshaft associative 4(b)";
                    out.predicted = point(y);
                }
                return;
            }
        }
        const bool have_y = !out.f_zeros.witnesses.empty(), have_z = !out.g_zeros.witnesses.empty();
        if (f_empty && g_empty) {
            if (vfg_empty()) {
                out.theorem = "outside V(N(f)) and V(N(g))";
                out.predicted = kind_only(ZeroKind::Empty);
            } else {
                out.reason = "no zeros of f or g on the sphere, but N(f) or N(g) vanishes there";
            }
            return;
        }
        // General camshaft cases 2-4 from one zero of each factor.
        Element<S> dfg_formula, numer;
        bool a_invertible = false;
        if (have_y && have_z) {
            const Element<S>& y = out.f_zeros.witnesses[0];
            const Element<S>& z = out.g_zeros.witnesses[0];
            out.theorem = "camshaft 4";
            dfg_formula = (conj(y) * df) * dg - df * (z * dg);
            const S nx = s.alpha * s.alpha + s.beta_sq;
            numer = nx * (df * dg) - (y * df) * (z * dg);
            a_invertible = try_invert(df).has_value() || try_invert(dg).has_value();
        } else if (have_y) {
            const Element<S>& y = out.f_zeros.witnesses[0];
            out.theorem = "camshaft 2";
            dfg_formula = df * vg - (im(y) * df) * dg;
            numer = (y * df) * vg - ((y * im(y)) * df) * dg;
            a_invertible = try_invert(df).has_value();
        } else if (have_z) {
            const Element<S>& z = out.g_zeros.witnesses[0];
            out.theorem = "camshaft 3";
            dfg_formula = vf * dg - df * (im(z) * dg);
            numer = vf * (z * dg) - df * ((z * im(z)) * dg);
            a_invertible = try_invert(dg).has_value();
        } else {
            out.reason = "zeros of f or g on the sphere have no exact witness";
            return;
        }
        if (dfg_formula != dfg) throw DomainError("product_zero_predict: spherical derivative formula mismatch");
        if (dfg.is_zero()) {
            if (a_invertible) {
                out.theorem += "(a)";
                out.predicted = kind_only(ZeroKind::FullSphere);
            } else {
                out.reason = out.theorem + ": (f.g)'_s = 0 with non-invertible factor derivatives";
                out.theorem.clear();
            }
            return;
        }
        auto inv = try_invert(dfg);
        if (!inv) {
            out.reason = out.theorem + ": (f.g)'_s is neither 0 nor invertible";
            out.theorem.clear();
            return;
        }
        out.theorem += "(b)";
        out.inclusion_only = true;
        out.formula_witness = numer * *inv;
        out.predicted = in_sphere(*out.formula_witness) ? point(*out.formula_witness) : kind_only(ZeroKind::Empty);
    };
    decide();
    if (out.predicted) {
        if (out.inclusion_only)
            out.agrees = out.actual.empty() || same_zero_set(*out.predicted, out.actual);
        else
            out.agrees = same_zero_set(*out.predicted, out.actual);
    }
    return out;
}

// Spheres of V(N(f)) from the roots of the real polynomial N(f).
struct CandidateSphere {
    bool exact = false;
    SphereRef<Rational> q{};  // valid when exact
    SphereRef<double> fl{};
    int multiplicity = 1;
    bool beta_rational() const { return exact && q.beta().has_value(); }
};
std::vector<CandidateSphere> candidate_spheres(const SliceFunction<Rational>& f);

struct SphereEntry {
    CandidateSphere sphere;
    std::optional<SphereZeroClass<Rational>> exact_class;
    std::optional<SphereZeroClass<double>> float_class;
    ZeroKind kind() const { return exact_class ? exact_class->kind : float_class->kind; }
};

struct ZeroReport {
    std::string function;
    std::vector<Rational> normal;  // N(f), ascending
    std::vector<Rational> determinant;  // set by zero_set_via_determinant
    std::vector<PolyRoot> normal_roots;
    std::vector<SphereEntry> spheres;
    std::vector<std::string> caveats;
};

// Zero set of a tame polynomial. force_float classifies every sphere in
// double precision.
ZeroReport full_zero_set(const SliceFunction<Rational>& f, bool force_float = false);

// D(z) = det of w -> w F(z) on A_C. If f(alpha + beta J) = 0 then
// F(z) = (iota - J) b for some b, so (iota + J) F(z) = 0 and D(z) = 0: the
// roots of D cover every sphere meeting V(f), tame or not.
std::vector<Rational> right_multiplication_determinant(const SliceFunction<Rational>& f);

// gcd of the real component polynomials of p, monic; empty for p = 0.
QPoly real_content(const PolyStem& p);

// Zero set of any polynomial, with candidate spheres from the roots of D.
// When D = 0 identically the spheres come from the real content of N(f)
// and N(f^c), which is not guaranteed complete (a caveat says so).
ZeroReport zero_set_via_determinant(const SliceFunction<Rational>& f, bool force_float = false);

// Per-sphere dispatch used by full_zero_set.
template <class S>
SphereZeroClass<S> classify_sphere(const SliceFunction<S>& f, const SphereRef<S>& s) {
    const auto& name = f.algebra()->name();
    if (name == "SO") return so_sphere_structure(f, s);
    if (name == "CL(0,3)") return r3_sphere_structure(f, s);
    return zeros_on_sphere(f, s);
}

}  // namespace slicealg
