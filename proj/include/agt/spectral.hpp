#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "agt/hamiltonian.hpp"
#include "agt/pauli.hpp"

extern "C" {
void zheevd_(const char* jobz, const char* uplo, const int* n, std::complex<double>* a,
             const int* lda, double* w, std::complex<double>* work, const int* lwork,
             double* rwork, const int* lrwork, int* iwork, const int* liwork, int* info);
}

namespace agt {

/// Ascending eigenvalues with orthonormal eigenvectors (columns).
struct SpectrumResult {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXcd eigenvectors;
};

namespace spectral_detail {

/// Divide-and-conquer Hermitian eigendecomposition (LAPACK zheevd).
/// Input is assumed Hermitian; only the lower triangle is referenced.
inline SpectrumResult hermitian_eigs(const Operator& h) {
    const int n = static_cast<int>(h.rows());
    SpectrumResult result;
    result.eigenvalues.resize(n);
    result.eigenvectors = h;

    int info = 0;
    int lwork = -1, lrwork = -1, liwork = -1;
    std::complex<double> work_query;
    double rwork_query;
    int iwork_query;
    zheevd_("V", "L", &n, result.eigenvectors.data(), &n, result.eigenvalues.data(), &work_query,
            &lwork, &rwork_query, &lrwork, &iwork_query, &liwork, &info);
    if (info != 0) throw InternalError("zheevd workspace query failed");

    lwork = static_cast<int>(work_query.real());
    lrwork = static_cast<int>(rwork_query);
    liwork = iwork_query;
    std::vector<std::complex<double>> work(static_cast<std::size_t>(lwork));
    std::vector<double> rwork(static_cast<std::size_t>(lrwork));
    std::vector<int> iwork(static_cast<std::size_t>(liwork));
    zheevd_("V", "L", &n, result.eigenvectors.data(), &n, result.eigenvalues.data(), work.data(),
            &lwork, rwork.data(), &lrwork, iwork.data(), &liwork, &info);
    if (info != 0) {
        throw InternalError("zheevd failed to converge (info " + std::to_string(info) + ")");
    }
    return result;
}

inline bool is_power_of_two(Eigen::Index n) {
    return n > 0 && (n & (n - 1)) == 0;
}

}  // namespace spectral_detail

inline void require_hermitian(const Operator& op, double tol = 1e-10) {
    if (op.rows() != op.cols()) {
        throw DomainError("operator must be square");
    }
    double residual = max_abs(op - op.adjoint());
    if (residual > tol) {
        throw DomainError("operator is not Hermitian (residual " + std::to_string(residual) + ")");
    }
}

inline SpectrumResult spectrum(const Operator& op) {
    require_hermitian(op);
    return spectral_detail::hermitian_eigs(op);
}

/// Count of eigenvalues within tol of the minimum.
inline int ground_degeneracy(const Eigen::VectorXd& eigenvalues, double tol) {
    int deg = 0;
    for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
        if (eigenvalues[i] - eigenvalues[0] <= tol) ++deg;
    }
    return deg;
}

/// Projector onto the span of eigenvectors within tol of the minimum
/// eigenvalue, together with that degeneracy.
inline std::pair<Operator, int> ground_projector(const Operator& op, double tol) {
    if (tol <= 0.0) throw DomainError("degeneracy tolerance must be positive");
    SpectrumResult es = spectrum(op);
    int deg = ground_degeneracy(es.eigenvalues, tol);
    auto block = es.eigenvectors.leftCols(deg);
    return {block * block.adjoint(), deg};
}

inline constexpr double kDefaultDegeneracyTol = 1e-9;

struct GapSample {
    double s = 0.0;
    double gap = 0.0;
    double ground_energy = 0.0;
    int ground_degeneracy = 0;
};

/// Sampled gap curve with the refined minimum. The gap is measured from the
/// degenerate ground set to the first level above it; a change of ground
/// degeneracy between adjacent samples is flagged, not thrown.
struct GapProfile {
    std::vector<GapSample> samples;
    double s_min = 0.0;
    double gap_min = 0.0;
    bool level_crossing_warning = false;
    std::string warning_detail;
};

namespace spectral_detail {

inline GapSample gap_at(const RealizedFamily& family, double s, double degeneracy_tol) {
    Operator h = family.at(s);
    SpectrumResult es = hermitian_eigs(h);
    int deg = ground_degeneracy(es.eigenvalues, degeneracy_tol);
    GapSample sample;
    sample.s = s;
    sample.ground_energy = es.eigenvalues[0];
    sample.ground_degeneracy = deg;
    sample.gap = deg < es.eigenvalues.size() ? es.eigenvalues[deg] - es.eigenvalues[0] : 0.0;
    return sample;
}

}  // namespace spectral_detail

inline GapProfile gap_profile(const TimeDependentHamiltonian& hamiltonian, int grid_points = 101,
                              double refine_tol = 1e-6,
                              double degeneracy_tol = kDefaultDegeneracyTol) {
    if (grid_points < 11) throw DomainError("gap profile needs at least 11 grid points");
    if (refine_tol <= 0.0) throw DomainError("refinement tolerance must be positive");

    RealizedFamily family(hamiltonian);
    GapProfile profile;
    profile.samples.reserve(static_cast<std::size_t>(grid_points));
    std::size_t min_index = 0;
    for (int k = 0; k < grid_points; ++k) {
        double s = static_cast<double>(k) / (grid_points - 1);
        profile.samples.push_back(spectral_detail::gap_at(family, s, degeneracy_tol));
        if (profile.samples.back().gap < profile.samples[min_index].gap) {
            min_index = profile.samples.size() - 1;
        }
    }

    for (std::size_t k = 1; k < profile.samples.size(); ++k) {
        if (profile.samples[k].ground_degeneracy != profile.samples[k - 1].ground_degeneracy) {
            profile.level_crossing_warning = true;
            profile.warning_detail = "ground degeneracy changes between s=" +
                                     std::to_string(profile.samples[k - 1].s) + " and s=" +
                                     std::to_string(profile.samples[k].s);
            break;
        }
    }

    // Golden-section refinement on the bracketing interval around the grid
    // minimum. The gap curve is continuous but may have kinks where excited
    // levels cross, so no derivatives are used.
    double lo = profile.samples[min_index > 0 ? min_index - 1 : 0].s;
    double hi = profile.samples[std::min(min_index + 1, profile.samples.size() - 1)].s;
    auto gap_value = [&](double s) {
        return spectral_detail::gap_at(family, s, degeneracy_tol).gap;
    };
    constexpr double inv_phi = 0.6180339887498949;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = gap_value(x1), f2 = gap_value(x2);
    while (hi - lo > refine_tol) {
        if (f1 <= f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = gap_value(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = gap_value(x2);
        }
    }
    double s_star = f1 <= f2 ? x1 : x2;
    double gap_star = std::min(f1, f2);
    if (gap_star <= profile.samples[min_index].gap) {
        profile.s_min = s_star;
        profile.gap_min = gap_star;
    } else {
        profile.s_min = profile.samples[min_index].s;
        profile.gap_min = profile.samples[min_index].gap;
    }
    return profile;
}

}  // namespace agt
