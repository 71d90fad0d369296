#include "edgecode/model.hpp"

#include <sstream>

namespace edgecode {

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::RatelessIr: return "rateless_ir";
        case Scheme::MdsIr: return "mds_ir";
        case Scheme::MdsR: return "mds_r";
    }
    return "?";
}

const char* decoder_name(DecoderSide d) {
    return d == DecoderSide::User ? "user" : "edge";
}

std::vector<std::string> SystemParams::validate() const {
    std::vector<std::string> errs;
    if (e < 1) errs.push_back("e must be >= 1");
    if (u < 1) errs.push_back("u must be >= 1");
    if (e > u) errs.push_back("e must not exceed u");
    if (k < 1) errs.push_back("k must be >= 1");
    if (r < 1) errs.push_back("r must be >= 1");
    if (!(mu > Rational(0)) || mu > Rational(1)) errs.push_back("mu must be in (0, 1]");
    if (beta <= 0) errs.push_back("beta must be > 0");
    if (nu <= 0) errs.push_back("nu must be > 0");
    if (f_cpu <= 0) errs.push_back("f_cpu must be > 0");
    if (n_e < 1) errs.push_back("n_e must be >= 1");
    if (n_u < 1) errs.push_back("n_u must be >= 1");
    if (q < 2) errs.push_back("q must be >= 2");
    // mu*k >= k/e, otherwise no placement can satisfy the storage constraint.
    if (e >= 1 && k >= 1 && (mu * Rational(k) < Rational(k, e)))
        errs.push_back("storage infeasible: mu*k < k/e");
    return errs;
}

double delta(const SystemParams& p) {
    const double ops = static_cast<double>(p.u) * (static_cast<double>(p.r) - 1.0) +
                       static_cast<double>(p.u) * static_cast<double>(p.r);
    return ops / (static_cast<double>(p.n_e) * p.f_cpu);
}

double psi(const SystemParams& p) {
    const double ops = static_cast<double>(p.k) * (2.0 * static_cast<double>(p.r) - 1.0);
    return ops / (static_cast<double>(p.n_u) * p.f_cpu);
}

std::int64_t SchemeDesign::n1(std::int64_t k) const {
    const Rational v = Rational(k) / Ro;
    if (!v.is_integer()) throw std::invalid_argument("k/Ro is not an integer");
    return v.num;
}

std::int64_t SchemeDesign::n_total(std::int64_t k) const {
    const Rational v = Rational(k) / (Ro * Ri);
    if (!v.is_integer()) throw std::invalid_argument("k/(Ro*Ri) is not an integer");
    return v.num;
}

std::int64_t SchemeDesign::distinct_target(std::int64_t k) const {
    if (scheme == Scheme::RatelessIr && Ro != Rational(1)) return k + phi_prime;
    return k;
}

std::vector<std::string> SchemeDesign::validate(const SystemParams& params) const {
    std::vector<std::string> errs;
    const std::int64_t k = params.k;
    if (!Ro.is_positive() || Ro > Rational(1)) errs.push_back("Ro must be in (0, 1]");
    if (!Ri.is_positive() || Ri > Rational(1)) errs.push_back("Ri must be in (0, 1]");
    if (!errs.empty()) return errs;

    const Rational per_en = Rational(k) / (Ro * Ri * Rational(params.e));
    if (per_en > params.storage_cap())
        errs.push_back("storage constraint violated: k/(Ro*Ri*e) > mu*k");

    if (scheme == Scheme::MdsR) {
        const Rational inv_ri = Ri.inverse();
        if (!inv_ri.is_integer()) errs.push_back("MDS-R requires integer 1/Ri");
        if (!(Rational(k) / Ro).is_integer()) errs.push_back("k/Ro must be an integer");
        if (xi < 1 || xi > params.e) errs.push_back("MDS-R requires 1 <= xi <= e");
    } else {
        // No row of the assignment matrix may be partly filled.
        if (!(Rational(k) / (Ro * Rational(params.e))).is_integer())
            errs.push_back("k/(e*Ro) must be an integer");
        if (!(Rational(k) / (Ro * Ri * Rational(params.e))).is_integer())
            errs.push_back("k/(e*Ro*Ri) must be an integer");
        const std::int64_t lo = scheme == Scheme::RatelessIr ? k + phi_prime : k;
        if (Ro != Rational(1) && Rational(k) / Ro < Rational(lo))
            errs.push_back("codeword count k/Ro below the scheme minimum");
        if (p < (Ro == Rational(1) && scheme == Scheme::RatelessIr ? k : lo))
            errs.push_back("p below the minimum distinct-product requirement");
        if (Rational(p) > params.e_mu_k()) errs.push_back("p exceeds e*mu*k");
    }
    if (scheme == Scheme::RatelessIr && phi_prime < 0) errs.push_back("phi' must be >= 0");
    return errs;
}

std::string SchemeDesign::str() const {
    std::ostringstream os;
    os << scheme_name(scheme) << "(";
    if (scheme == Scheme::MdsR)
        os << "xi=" << xi;
    else
        os << "p=" << p;
    os << ", Ro=" << Ro.str() << ", Ri=" << Ri.str() << ")";
    return os.str();
}

LatencyBreakdown make_breakdown(double comp, double dec, double comm, double psi_seconds) {
    LatencyBreakdown b;
    b.comp = comp;
    b.dec = dec;
    b.comm = comm;
    b.total = comp + dec + comm;
    b.normalized = psi_seconds > 0 ? b.total / psi_seconds : 0.0;
    return b;
}

}  // namespace edgecode
