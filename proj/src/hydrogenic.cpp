#include "ssefd/hydrogenic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "ssefd/errors.hpp"

namespace ssefd {

double analytic_energy(int n, const PhysicalConstants& c) {
    if (n < 1) throw std::invalid_argument("analytic_energy: level index must be >= 1");
    return -c.rydberg_R / (static_cast<double>(n) * static_cast<double>(n));
}

double analytic_wavefunction(int n, double z, const PhysicalConstants& c) {
    if (z < 0.0) throw std::invalid_argument("analytic_wavefunction: z must be >= 0");
    const double r = c.bohr_rB;
    const double x = z / r;
    const double scale = std::pow(r, -1.5);
    switch (n) {
        case 1:
            return 2.0 * scale * z * std::exp(-x);
        case 2:
            return (1.0 / std::numbers::sqrt2) * scale * z * (1.0 - 0.5 * x) * std::exp(-0.5 * x);
        default:
            throw std::invalid_argument("analytic_wavefunction: closed forms exist for n in {1,2}");
    }
}

namespace {

// Adaptive Simpson with Richardson correction. Throws when the depth budget
// runs out, reporting the tolerance actually achieved.
struct SimpsonWorker {
    const std::function<double(double)>& f;
    int max_depth;
    double worst_err = 0.0;
    bool failed = false;

    double recurse(double a, double b, double fa, double fm, double fb, double whole, double tol,
                   int depth) {
        const double m = 0.5 * (a + b);
        const double lm = 0.5 * (a + m);
        const double rm = 0.5 * (m + b);
        const double flm = f(lm);
        const double frm = f(rm);
        const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        const double err = left + right - whole;
        if (std::abs(err) <= 15.0 * tol || depth >= max_depth) {
            if (depth >= max_depth && std::abs(err) > 15.0 * tol) {
                failed = true;
                worst_err = std::max(worst_err, std::abs(err) / 15.0);
            }
            return left + right + err / 15.0;
        }
        return recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
               recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
};

// Seeded with a uniform partition so narrow features cannot hide between the
// first sample points.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int panels = 64, int max_depth = 48) {
    SimpsonWorker w{f, max_depth};
    double total = 0.0;
    const double width = (b - a) / panels;
    const double panel_tol = tol / panels;
    for (int i = 0; i < panels; ++i) {
        const double pa = a + width * i;
        const double pb = (i + 1 == panels) ? b : pa + width;
        const double fa = f(pa), fb = f(pb), fm = f(0.5 * (pa + pb));
        const double whole = (pb - pa) / 6.0 * (fa + 4.0 * fm + fb);
        total += w.recurse(pa, pb, fa, fm, fb, whole, panel_tol, 0);
    }
    if (w.failed)
        throw NumericalError("adaptive quadrature did not converge; achieved ~" +
                             fmt_sci(w.worst_err));
    return total;
}

}  // namespace

double dipole_matrix_element(int m, int n, const PhysicalConstants& c) {
    if ((m != 1 && m != 2) || (n != 1 && n != 2))
        throw std::invalid_argument("dipole_matrix_element: levels must be in {1, 2}");
    const double r = c.bohr_rB;
    const auto integrand = [&](double z) {
        return analytic_wavefunction(m, z, c) * z * analytic_wavefunction(n, z, c);
    };
    // Both wavefunctions are exponentially dead well before 150 r_B.
    return adaptive_simpson(integrand, 0.0, 150.0 * r, 1e-12 * r);
}

SurfaceStateBasis SurfaceStateBasis::standard(int n_max, const PhysicalConstants& c) {
    if (n_max < 1) throw std::invalid_argument("SurfaceStateBasis: n_max must be >= 1");
    SurfaceStateBasis b;
    b.n_max = n_max;
    const double r = c.bohr_rB;
    const double z_min = 1e-3 * r;
    const double z_max = std::max(200.0, 40.0 * n_max * n_max) * r;
    const double h = 0.0125 * r;
    const auto count = static_cast<std::size_t>(std::ceil((z_max - z_min) / h)) + 1;
    b.grid.resize(count);
    for (std::size_t i = 0; i < count; ++i) b.grid[i] = z_min + h * static_cast<double>(i);
    return b;
}

void SurfaceStateBasis::validate(const PhysicalConstants& c) const {
    if (n_max < 1) throw std::invalid_argument("SurfaceStateBasis: n_max must be >= 1");
    if (grid.size() < 2000)
        throw std::invalid_argument("SurfaceStateBasis: grid size must be >= 2000");
    const double r = c.bohr_rB;
    if (!(grid.front() > 0.0) || grid.front() > r / 100.0)
        throw std::invalid_argument("SurfaceStateBasis: grid must start in (0, r_B/100]");
    if (grid.back() < 40.0 * n_max * n_max * r)
        throw std::invalid_argument("SurfaceStateBasis: grid must extend to 40 n_max^2 r_B");
    const double h = grid[1] - grid[0];
    if (!(h > 0.0)) throw std::invalid_argument("SurfaceStateBasis: grid must be increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double d = grid[i] - grid[i - 1];
        if (!(d > 0.0) || std::abs(d - h) > 1e-9 * h)
            throw std::invalid_argument("SurfaceStateBasis: grid must be uniform");
    }
}

namespace {

struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;       // symmetrized off-diagonal, size n-1
    std::vector<double> vec_scale; // maps symmetric-problem eigenvectors back
};

// Hamiltonian on the given grid. Row 0 couples to the wall at z = 0 through a
// one-sided stencil with left gap a = grid[0]; the resulting nonsymmetric
// first row is symmetrized by a diagonal similarity transform.
Tridiag build_hamiltonian(const std::vector<double>& grid, double holding_field,
                          const PhysicalConstants& c) {
    const std::size_t n = grid.size();
    const double h = grid[1] - grid[0];
    const double kin = c.hbar * c.hbar / (2.0 * c.electron_mass);
    const double eps0 = 8.8541878128e-12;
    const double coul = c.lambda_image * c.electron_charge * c.electron_charge /
                        (4.0 * std::numbers::pi * eps0);
    const double field = c.electron_charge * holding_field;

    Tridiag T;
    T.diag.resize(n);
    T.off.assign(n - 1, -kin / (h * h));
    T.vec_scale.assign(n, 1.0);

    for (std::size_t i = 0; i < n; ++i)
        T.diag[i] = 2.0 * kin / (h * h) - coul / grid[i] + field * grid[i];

    const double a = grid[0];
    if (std::abs(a - h) > 1e-9 * h) {
        // -psi''(z0) ~ 2 psi0/(a h) - 2 psi1/(h (a + h)) with psi(0) = 0
        T.diag[0] = 2.0 * kin / (a * h) - coul / grid[0] + field * grid[0];
        const double upper = -2.0 * kin / (h * (a + h));  // row 0 -> 1
        const double lower = T.off[0];                    // row 1 -> 0
        T.off[0] = -std::sqrt(upper * lower);
        T.vec_scale[0] = std::sqrt(upper / lower);  // v_orig[0] = scale * v_sym[0]
    }
    return T;
}

// Number of eigenvalues strictly below lambda (Sturm sequence count).
int sturm_count(const Tridiag& T, double lambda) {
    const std::size_t n = T.diag.size();
    int count = 0;
    double q = T.diag[0] - lambda;
    if (q < 0.0) ++count;
    for (std::size_t i = 1; i < n; ++i) {
        if (q == 0.0) q = 1e-300;
        q = T.diag[i] - lambda - T.off[i - 1] * T.off[i - 1] / q;
        if (q < 0.0) ++count;
    }
    return count;
}

// k-th smallest eigenvalue (k = 0-based) by bisection.
double bisect_eigenvalue(const Tridiag& T, int k) {
    double lo = T.diag[0], hi = T.diag[0];
    for (std::size_t i = 0; i < T.diag.size(); ++i) {
        const double r = (i > 0 ? std::abs(T.off[i - 1]) : 0.0) +
                         (i + 1 < T.diag.size() ? std::abs(T.off[i]) : 0.0);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(T, mid) > k)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

// Inverse iteration with a partially pivoted tridiagonal solve.
std::vector<double> inverse_iteration(const Tridiag& T, double lambda) {
    const std::size_t n = T.diag.size();
    std::vector<double> d(n), du(n - 1), dl(n - 1);

    std::vector<double> x(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 / std::sqrt(static_cast<double>(n));

    for (int sweep = 0; sweep < 4; ++sweep) {
        for (std::size_t i = 0; i < n; ++i) d[i] = T.diag[i] - lambda;
        for (std::size_t i = 0; i + 1 < n; ++i) du[i] = dl[i] = T.off[i];

        // LU with partial pivoting; the shifted matrix is near-singular on purpose.
        std::vector<double> b = x;
        std::vector<double> extra(n, 0.0);  // second superdiagonal from row swaps
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (std::abs(dl[i]) > std::abs(d[i])) {
                std::swap(d[i], dl[i]);
                const double tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp;
                if (i + 2 < n) {
                    extra[i] = du[i + 1];
                    du[i + 1] = 0.0;
                }
                std::swap(b[i], b[i + 1]);
            }
            if (d[i] == 0.0) d[i] = 1e-300;
            const double m = dl[i] / d[i];
            d[i + 1] -= m * du[i];
            if (i + 2 < n) du[i + 1] -= m * extra[i];
            b[i + 1] -= m * b[i];
        }
        if (d[n - 1] == 0.0) d[n - 1] = 1e-300;
        x[n - 1] = b[n - 1] / d[n - 1];
        x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
        for (std::size_t ii = n - 2; ii-- > 0;)
            x[ii] = (b[ii] - du[ii] * x[ii + 1] - extra[ii] * x[ii + 2]) / d[ii];

        double norm = 0.0;
        for (double v : x) norm += v * v;
        norm = std::sqrt(norm);
        for (double& v : x) v /= norm;
    }
    return x;
}

EigenSolution solve_on_grid(const std::vector<double>& grid, double holding_field, int n_levels,
                            const PhysicalConstants& c, bool vectors = true) {
    const Tridiag T = build_hamiltonian(grid, holding_field, c);
    EigenSolution sol;
    sol.energies.resize(n_levels);
    if (vectors) sol.wavefunctions.resize(n_levels);
    for (int k = 0; k < n_levels; ++k) {
        const double lam = bisect_eigenvalue(T, k);
        sol.energies[k] = lam / c.hbar;
        if (!vectors) continue;
        std::vector<double> v = inverse_iteration(T, lam);
        v[0] *= T.vec_scale[0];
        // Fix sign (positive slope off the wall) and normalize under the
        // trapezoidal rule so sum psi^2 dz = 1.
        if (v[1] < 0.0)
            for (double& q : v) q = -q;
        std::vector<double> v2(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) v2[i] = v[i] * v[i];
        const double nrm = std::sqrt(trapezoid(grid, v2));
        for (double& q : v) q /= nrm;
        sol.wavefunctions[k] = std::move(v);
    }
    return sol;
}

}  // namespace

double trapezoid(const std::vector<double>& grid, const std::vector<double>& f) {
    if (grid.size() != f.size() || grid.size() < 2)
        throw std::invalid_argument("trapezoid: mismatched or short inputs");
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        s += 0.5 * (f[i] + f[i + 1]) * (grid[i + 1] - grid[i]);
    return s;
}

EigenSolution grid_eigensolve(const SurfaceStateBasis& basis, const PhysicalConstants& c) {
    basis.validate(c);
    EigenSolution sol = solve_on_grid(basis.grid, basis.holding_field, basis.n_max, c);

    // Richardson guard: a 2x-refined grid must not move any eigenvalue by
    // more than 0.1%, otherwise the requested grid is too coarse.
    std::vector<double> fine(basis.grid.size() * 2 - 1);
    for (std::size_t i = 0; i + 1 < basis.grid.size(); ++i) {
        fine[2 * i] = basis.grid[i];
        fine[2 * i + 1] = 0.5 * (basis.grid[i] + basis.grid[i + 1]);
    }
    fine.back() = basis.grid.back();
    const EigenSolution ref = solve_on_grid(fine, basis.holding_field, basis.n_max, c, false);
    for (int k = 0; k < basis.n_max; ++k) {
        const double rel =
            std::abs(sol.energies[k] - ref.energies[k]) / std::abs(ref.energies[k]);
        if (rel > 1e-3)
            throw NumericalError("grid_eigensolve: grid too coarse, refinement moved E_" +
                                 std::to_string(k + 1) + " by " + fmt_sci(rel));
    }
    return sol;
}

namespace {

double transition_freq(const SurfaceStateBasis& basis, double field,
                       const PhysicalConstants& c) {
    const EigenSolution sol = solve_on_grid(basis.grid, field, 2, c, false);
    return sol.energies[1] - sol.energies[0];
}

}  // namespace

StarkSlopeResult stark_slope(const SurfaceStateBasis& basis, double probe_field,
                             const PhysicalConstants& c) {
    basis.validate(c);
    if (!(probe_field > 0.0))
        throw std::invalid_argument("stark_slope: probe_field must be positive");

    const double two_pi = 2.0 * std::numbers::pi;
    const double wp = transition_freq(basis, probe_field, c);
    const double wm = transition_freq(basis, -probe_field, c);
    const double w0 = transition_freq(basis, 0.0, c);

    StarkSlopeResult res;
    // rad/s per (V/m) -> Hz per (V/cm): /(2 pi) * 100.
    res.slope_hz_per_v_cm = (wp - wm) / (2.0 * probe_field) / two_pi * 100.0;

    const EigenSolution sol = solve_on_grid(basis.grid, 0.0, 2, c);
    std::vector<double> prod(basis.grid.size());
    double z11 = 0.0, z22 = 0.0;
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = sol.wavefunctions[0][i] * basis.grid[i] * sol.wavefunctions[0][i];
    z11 = trapezoid(basis.grid, prod);
    for (std::size_t i = 0; i < prod.size(); ++i)
        prod[i] = sol.wavefunctions[1][i] * basis.grid[i] * sol.wavefunctions[1][i];
    z22 = trapezoid(basis.grid, prod);
    res.perturbative_hz_per_v_cm =
        c.electron_charge * (z22 - z11) / (two_pi * c.hbar) * 100.0;

    // Curvature over the probed range relative to the linear span.
    const double nonlin = std::abs(wp + wm - 2.0 * w0) / std::max(std::abs(wp - wm), 1e-300);
    if (nonlin > 0.01)
        res.warning = "stark_slope: transition is nonlinear over the probed range (" +
                      fmt_sci(nonlin * 100.0) + "%)";
    return res;
}

}  // namespace ssefd
