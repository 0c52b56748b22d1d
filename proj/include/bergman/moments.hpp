#pragma once

// Area moments of polygons via Green's theorem:
//   c_{m,n} = \int z^m \bar z^n dA = 1/(2i(n+1)) \oint z^m \bar z^{n+1} dz
//   I_{m,n} = \int x^m y^n dA     = -1/(n+1)   \oint x^m y^{n+1} dx
// Each edge integral is a polynomial in the edge parameter and is expanded
// binomially, so results are exact up to rounding at the requested precision.

#include "bergman/geometry.hpp"
#include "bergman/mp.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

namespace bergman {

using mp::Complex;

/// Precision used when serving a degree-N content computation.
mp::Bits default_precision_bits(int N);

/// Stable hash of the vertex coordinates (exact binary values) and precision.
std::uint64_t polygon_fingerprint(const Polygon& p, mp::Bits bits);

Complex complex_moment(const Polygon& p, int m, int n, mp::Bits bits);
Real real_moment(const Polygon& p, int m, int n, mp::Bits bits);

/// All c[m][n] and I[m][n] with m + n <= maxdeg. Immutable once built.
class MomentTable {
public:
    MomentTable(std::uint64_t fingerprint, int maxdeg, mp::Bits bits, std::vector<Complex> c, std::vector<Real> I);

    std::uint64_t fingerprint() const noexcept { return fingerprint_; }
    int maxdeg() const noexcept { return maxdeg_; }
    mp::Bits precision_bits() const noexcept { return bits_; }

    const Complex& c(int m, int n) const { return c_[index(m, n)]; }
    const Real& I(int m, int n) const { return I_[index(m, n)]; }

    /// Entry count per kind: (maxdeg+1)(maxdeg+2)/2.
    std::size_t entry_count() const noexcept { return c_.size(); }

    static std::size_t index(int m, int n) {
        const auto d = static_cast<std::size_t>(m + n);
        return d * (d + 1) / 2 + static_cast<std::size_t>(n);
    }

    /// Copy with entry (m, n) of the complex table replaced; used by the
    /// verification harness as a negative control.
    MomentTable with_complex_entry(int m, int n, const Complex& value) const;

private:
    std::uint64_t fingerprint_;
    int maxdeg_;
    mp::Bits bits_;
    std::vector<Complex> c_;
    std::vector<Real> I_;
};

MomentTable moment_table(const Polygon& p, int maxdeg, mp::Bits bits, int jobs = 1);

struct CrossCheckReport {
    /// max |c[m][n] - sum_s kappa_s i^s I[m+n-s][s]|
    double max_abs_residual = 0.0;
    /// residual divided by max(sum_s |kappa_s| |I[m+n-s][s]|, natural size of degree m+n moments)
    double max_scaled_residual = 0.0;
    int worst_m = 0;
    int worst_n = 0;
};

/// Recombines the real moments into complex ones through z = x + iy and
/// reports the largest disagreement with the stored complex moments.
CrossCheckReport cross_check(const MomentTable& t);

// ------------------------------------------------------------ persistence

void save_moment_tables(const std::filesystem::path& path, const std::vector<MomentTable>& tables);
std::vector<MomentTable> load_moment_tables(const std::filesystem::path& path);

/// Tables keyed by (fingerprint, precision). Thread-safe. When a path is
/// given, previously saved tables are loaded and `flush` writes them back.
class MomentCache {
public:
    MomentCache() = default;
    explicit MomentCache(std::filesystem::path path);

    /// Table of at least `maxdeg` for p at `bits`, computing and storing it if needed.
    std::shared_ptr<const MomentTable> get(const Polygon& p, int maxdeg, mp::Bits bits, int jobs = 1);
    void flush() const;
    std::size_t size() const;

private:
    std::optional<std::filesystem::path> path_;
    mutable std::mutex mutex_;
    std::map<std::pair<std::uint64_t, mp::Bits>, std::shared_ptr<const MomentTable>> tables_;
};

}  // namespace bergman
