#ifndef JBT_VERIFICATION_HPP
#define JBT_VERIFICATION_HPP

#include <string>
#include <vector>

#include "jbt/ideals.hpp"
#include "jbt/numrange.hpp"

namespace jbt {
namespace verify {

/// One named check of the verification battery. expected/got/tol describe
/// the comparison that produced pass; criterion groups checks for
/// per-criterion summaries.
struct CheckResult {
    std::string name;
    int criterion = 0;
    double expected = 0.0;
    double got = 0.0;
    double tol = 0.0;
    bool pass = false;
};

namespace detail {

struct Battery {
    std::vector<CheckResult> checks;
    std::vector<double> observed_ratios;  ///< v/||T|| ratios from criteria 5 and 6

    void near(const std::string& name, int crit, double got, double expected, double tol) {
        checks.push_back({name, crit, expected, got, tol, std::abs(got - expected) <= tol});
    }
    void at_least(const std::string& name, int crit, double got, double floor) {
        checks.push_back({name, crit, floor, got, 0.0, got >= floor});
    }
    void at_most(const std::string& name, int crit, double got, double cap) {
        checks.push_back({name, crit, cap, got, 0.0, got <= cap});
    }
    void flag(const std::string& name, int crit, bool got) {
        checks.push_back({name, crit, 1.0, got ? 1.0 : 0.0, 0.0, got});
    }
};

inline std::vector<FactorSpec> suite_specs() {
    return {FactorSpec::diagonal(3),
            FactorSpec::rectangular(2, 2),
            FactorSpec::q3(),
            FactorSpec::rectangular(1, 2),
            FactorSpec::symmetric(2),
            FactorSpec::antisymmetric(4),
            FactorSpec::direct_sum({FactorSpec::diagonal(2), FactorSpec::rectangular(1, 2)})};
}

inline std::string suite_label(const FactorSpec& spec) {
    switch (spec.kind) {
        case FactorSpec::Kind::Rectangular:
            return "rect" + std::to_string(spec.p) + "x" + std::to_string(spec.q);
        case FactorSpec::Kind::Symmetric: return "sym" + std::to_string(spec.p);
        case FactorSpec::Kind::Antisymmetric: return "antisym" + std::to_string(spec.p);
        case FactorSpec::Kind::Diagonal: return "diag" + std::to_string(spec.p);
        case FactorSpec::Kind::Q3: return "q3";
        case FactorSpec::Kind::Subspace: return "subspace";
        case FactorSpec::Kind::DirectSum: return "direct_sum";
    }
    return "space";
}

inline Element m2_unit(const SpaceRef& m, int k) { return Element{m, Vec::Unit(4, k)}; }

/// Criteria 1-3: numerical radii of the multiplication operators with exact
/// paper values 1/2 ||b|| and 1/4.
inline void multiplication_radii(Battery& b, std::uint64_t seed) {
    auto m2 = build_space(FactorSpec::rectangular(2, 2));
    Element eye{m2, m2->coords(Mat::Identity(2, 2))};
    Element e12 = m2_unit(m2, 1);

    RealLinearOperator mb = jordan_mult_op(e12, eye);
    b.near("radius_jordan_mult_nilpotent_m2", 1, numerical_radius(mb, seed).value, 0.5, 0.01);

    auto q3 = build_space(FactorSpec::q3());
    Element qb{q3, 2.0 * Vec::Unit(3, 2)};
    Element qe{q3, std::sqrt(2.0) * Vec::Unit(3, 0)};
    b.near("radius_jordan_mult_scaled_nilpotent_q3", 1,
           numerical_radius(jordan_mult_op(qb, qe), seed).value, 1.0, 0.02);

    b.near("radius_left_mult_nilpotent_m2", 2, numerical_radius(left_mult_op(e12), seed).value,
           0.5, 0.01);
    b.near("radius_right_mult_nilpotent_m2", 2, numerical_radius(right_mult_op(e12), seed).value,
           0.5, 0.01);
    b.near("radius_right_mult_half_nilpotent_m2", 2,
           numerical_radius(right_mult_op(0.5 * e12), seed).value, 0.25, 0.01);

    RealLinearOperator lbe = L_op(e12, eye);
    b.near("norm_L_be_m2", 3, operator_norm(lbe, seed).value, 1.0, 0.01);
    b.near("radius_L_be_m2", 3, numerical_radius(lbe, seed).value, 0.5, 0.01);
}

/// Criterion 4: the operator attached to a 2-nilpotent has norm 1 and
/// radius 1/2; construction itself certifies c > 0 and the cube relations.
inline void t_operator_checks(Battery& b, std::uint64_t seed) {
    auto m2 = build_space(FactorSpec::rectangular(2, 2));
    Element eye{m2, m2->coords(Mat::Identity(2, 2))};
    TOperator tm = build_T_operator(eye, m2_unit(m2, 1));
    b.flag("t_operator_built_m2", 4, true);
    b.near("t_operator_norm_m2", 4, operator_norm(tm.T, seed).value, 1.0, 0.01);
    b.near("t_operator_radius_m2", 4, numerical_radius(tm.T, seed).value, 0.5, 0.01);

    auto q3 = build_space(FactorSpec::q3());
    Element qeye{q3, std::sqrt(2.0) * Vec::Unit(3, 0)};
    TOperator tq = build_T_operator(qeye, Element{q3, Vec::Unit(3, 2)});
    b.flag("t_operator_built_q3", 4, true);
    b.near("t_operator_norm_q3", 4, operator_norm(tq.T, seed).value, 1.0, 0.01);
    b.near("t_operator_radius_q3", 4, numerical_radius(tq.T, seed).value, 0.5, 0.01);
}

/// Criteria 5-7: index estimates. Commutative spaces stay above 0.97,
/// non-commutative ones drop to 1/2, and every ratio respects the 1/e floor.
inline void index_checks(Battery& b, std::uint64_t seed) {
    for (int n : {2, 4}) {
        IndexEstimate est =
            numerical_index_estimate(build_space(FactorSpec::diagonal(n)), seed, 50);
        double lo = 1.0;
        for (double r : est.ratios) lo = std::min(lo, r);
        b.at_least("index_diag" + std::to_string(n) + "_min_ratio", 5, lo, 0.97);
        b.observed_ratios.insert(b.observed_ratios.end(), est.ratios.begin(), est.ratios.end());
    }

    std::vector<std::pair<std::string, FactorSpec>> hard = {
        {"m2", FactorSpec::rectangular(2, 2)},
        {"sym2", FactorSpec::symmetric(2)},
        {"sum_diag1_m2",
         FactorSpec::direct_sum({FactorSpec::diagonal(1), FactorSpec::rectangular(2, 2)})},
    };
    for (const auto& [label, spec] : hard) {
        IndexEstimate est = numerical_index_estimate(build_space(spec), seed, 20);
        b.at_most("index_" + label + "_upper", 6, est.value, 0.51);
        b.flag("index_" + label + "_has_witness", 6, !est.witness_kind.empty());
        b.observed_ratios.insert(b.observed_ratios.end(), est.ratios.begin(), est.ratios.end());
    }

    double lo = 1.0;
    for (double r : b.observed_ratios) lo = std::min(lo, r);
    b.at_least("bohnenblust_karlin_floor", 7, lo, 1.0 / std::exp(1.0) - 0.02);
}

/// Criterion 8: the characterization-report suite with its internal
/// equivalences, the Hilbert-space split, and no consistency errors.
inline void report_checks(Battery& b, std::uint64_t seed) {
    int errors = 0;
    for (const FactorSpec& spec : suite_specs()) {
        std::string label = suite_label(spec);
        try {
            CommutativityReport rep = commutativity_report(build_space(spec), 1e-8, seed);
            b.flag("report_" + label + "_i_iff_xiv", 8, rep.item_i.holds == rep.item_xiv.holds);
            b.flag("report_" + label + "_xii_and_xiv_iff_i", 8,
                   (rep.item_xii.holds && rep.item_xiv.holds) == rep.item_i.holds);
            if (spec.kind == FactorSpec::Kind::Rectangular && spec.p == 1 && spec.q == 2) {
                b.flag("report_rect1x2_split_xii_true", 8, rep.item_xii.holds);
                b.flag("report_rect1x2_split_i_false", 8, !rep.item_i.holds);
            }
        } catch (const InconsistentCharacterization&) {
            ++errors;
        }
    }
    b.at_most("report_consistency_errors", 8, static_cast<double>(errors), 0.0);
}

/// Criterion 9: algebraic identities over >= 100 seeded samples per space.
inline void property_checks(Battery& b, std::uint64_t seed) {
    for (const FactorSpec& spec : suite_specs()) {
        auto sp = build_space(spec);
        std::string label = suite_label(spec);
        Rng rng = Rng::derive(seed, 0x900 + static_cast<std::uint64_t>(sp->dim));
        auto sample = [&]() { return Element{sp, rng.gaussian_vector(sp->dim)}; };

        double jordan = 0.0, cube = 0.0, calc = 0.0;
        for (int t = 0; t < 100; ++t) {
            Element a = sample(), c = sample(), x = sample(), y = sample();
            double scale = std::max(1.0, a.frob() * c.frob() * x.frob() * y.frob());
            jordan = std::max(jordan, jordan_identity_defect(a, c, x, y) / scale);

            double na = a.norm();
            double cube_scale = std::max(1.0, na * na * na);
            cube = std::max(cube,
                            std::abs(triple_product(a, a, a).norm() - na * na * na) / cube_scale);

            Element ident = odd_calculus(a, [](double s) { return s; });
            calc = std::max(calc, (ident - a).frob() / std::max(1.0, a.frob()));
            Element root = cubic_root(a);
            calc = std::max(calc, (triple_product(root, root, root) - a).frob() /
                                      std::max(1.0, a.frob()));
        }
        b.at_most("jordan_identity_" + label, 9, jordan, 1e-10);
        b.at_most("cube_identity_" + label, 9, cube, 1e-8);
        b.at_most("calculus_roundtrip_" + label, 9, calc, 1e-9);

        // Tripotents for the Peirce and orthogonality families.
        std::vector<Element> tripotents;
        for (int k = 0; k < sp->dim && tripotents.size() < 2; ++k) {
            RangeTripotent r = range_tripotent(Element{sp, Vec::Unit(sp->dim, k)});
            if (!r.zero) tripotents.push_back(r.tripotent);
        }
        for (int t = 0; t < 8 && tripotents.size() < 4; ++t) {
            RangeTripotent r = range_tripotent(sample());
            if (!r.zero) tripotents.push_back(r.tripotent);
        }

        double peirce_ops = 0.0, contract = 0.0, ortho = 0.0;
        for (const Element& e : tripotents) {
            PeirceSystem ps = peirce(e);
            RealLinearOperator l = L_op(e, e);
            RealLinearOperator sum = ps.P2 + ps.P1 + ps.P0;
            peirce_ops = std::max(peirce_ops,
                                  (sum.A - Mat::Identity(sp->dim, sp->dim)).norm());
            peirce_ops = std::max(
                peirce_ops, (l.A - (ps.P2.A + 0.5 * ps.P1.A)).norm());
            for (int part : {0, 1, 2}) {
                const RealLinearOperator& p = ps.projection(part);
                peirce_ops = std::max(peirce_ops, (p.compose(p).A - p.A).norm());
            }
            for (int t = 0; t < 25; ++t) {
                Element x = sample();
                for (int part : {0, 1, 2})
                    contract = std::max(contract,
                                        (ps.project(part, x).norm() - x.norm()) /
                                            std::max(1.0, x.norm()));
                // Generic pairs are never orthogonal; is_orthogonal throws if
                // its three characterizations disagree.
                if (is_orthogonal(x, sample())) ortho = std::max(ortho, 1.0);
                // Peirce-2 against Peirce-0 parts are orthogonal; all three
                // characterizations must agree.
                Element a2 = ps.project(2, x), a0 = ps.project(0, sample());
                if (a2.frob() < 1e-8 || a0.frob() < 1e-8) continue;
                double scale = std::max(1.0, a2.frob() * a2.frob() * a0.frob());
                ortho = std::max(ortho, triple_product(a2, a2, a0).frob() / scale);
                ortho = std::max(ortho, triple_product(a0, a0, a2).frob() / scale);
                ortho = std::max(ortho, L_op(a2, a0).coord_norm() /
                                            std::max(1.0, a2.frob() * a0.frob()));
                if (!is_orthogonal(a2, a0)) ortho = std::max(ortho, 1.0);
            }
        }
        b.at_most("peirce_projection_identities_" + label, 9, peirce_ops, 1e-7);
        b.at_most("peirce_contractivity_" + label, 9, contract, 1e-10);
        b.at_most("orthogonality_equivalences_" + label, 9, ortho, 1e-8);
    }
}

/// Criterion 10: independent oracles. Finite differences for the norm
/// derivative, eigensolver projections for Peirce, iterated cubic roots for
/// the range tripotent.
inline void oracle_checks(Battery& b, std::uint64_t seed) {
    double fd_defect = 0.0;
    int pairs = 0;
    std::vector<FactorSpec> fd_specs = {FactorSpec::rectangular(2, 2), FactorSpec::q3(),
                                        FactorSpec::symmetric(2), FactorSpec::diagonal(3)};
    Rng rng = Rng::derive(seed, 0xF0);
    while (pairs < 1000) {
        const FactorSpec& spec = fd_specs[pairs % fd_specs.size()];
        auto sp = build_space(spec);
        Vec z = rng.gaussian_vector(sp->dim);
        Element x{sp, z};
        double n = x.norm();
        if (n < 1e-6) continue;
        x = (1.0 / n) * x;
        jbt::detail::AmbientSVD svd = jbt::detail::thin_svd(x.ambient());
        if (svd.sigma.size() > 1 && svd.sigma(0) - svd.sigma(1) < 1e-2) continue;
        Element y{sp, rng.gaussian_vector(sp->dim)};
        double exact = dir_derivative(x, y);
        auto norm_at = [&](double t) { return (x + t * y).norm(); };
        auto central = [&](double h) { return (norm_at(h) - norm_at(-h)) / (2.0 * h); };
        double fd = (4.0 * central(5e-5) - central(1e-4)) / 3.0;
        fd_defect = std::max(fd_defect, std::abs(exact - fd) / std::max(1.0, y.norm()));
        ++pairs;
    }
    b.at_most("dir_derivative_vs_finite_differences", 10, fd_defect, 1e-5);

    double peirce_defect = 0.0;
    double range_defect = 0.0;
    for (const FactorSpec& spec : suite_specs()) {
        auto sp = build_space(spec);
        Rng srng = Rng::derive(seed, 0xF1 + static_cast<std::uint64_t>(sp->dim));
        std::vector<Element> samples;
        for (int k = 0; k < sp->dim; ++k) samples.push_back(Element{sp, Vec::Unit(sp->dim, k)});
        for (int t = 0; t < 20; ++t) samples.push_back(Element{sp, srng.gaussian_vector(sp->dim)});

        int tripotents = 0;
        for (const Element& x : samples) {
            RangeTripotent r = range_tripotent(x);
            if (r.zero) continue;
            range_defect =
                std::max(range_defect, (r.tripotent - iterated_cubic_root_tripotent(x)).frob());
            if (tripotents < 4) {
                ++tripotents;
                PeirceSystem ps = peirce(r.tripotent);
                // Eigensolver route: classify L(e,e) eigenvectors by eigenvalue
                // and assemble the three spectral projections directly.
                Mat l = L_op(r.tripotent, r.tripotent).A;
                Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(l));
                Mat p2 = Mat::Zero(sp->dim, sp->dim), p1 = p2, p0 = p2;
                for (int i = 0; i < sp->dim; ++i) {
                    Mat outer = es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint();
                    double lam = es.eigenvalues()(i);
                    if (std::abs(lam - 1.0) < 0.25)
                        p2 += outer;
                    else if (std::abs(lam - 0.5) < 0.25)
                        p1 += outer;
                    else
                        p0 += outer;
                }
                peirce_defect = std::max(peirce_defect, (ps.P2.A - p2).norm());
                peirce_defect = std::max(peirce_defect, (ps.P1.A - p1).norm());
                peirce_defect = std::max(peirce_defect, (ps.P0.A - p0).norm());
            }
        }
    }
    b.at_most("peirce_polynomial_vs_eigensolver", 10, peirce_defect, 1e-8);
    b.at_most("range_tripotent_vs_iterated_roots", 10, range_defect, 1e-6);
}

}  // namespace detail

inline const char* criterion_title(int k) {
    switch (k) {
        case 1: return "nilpotent multiplication radius";
        case 2: return "one-sided multiplication radii";
        case 3: return "L(b,e) norm and radius";
        case 4: return "T-operator norm and radius";
        case 5: return "commutative index one";
        case 6: return "non-commutative index upper bound";
        case 7: return "Bohnenblust-Karlin floor";
        case 8: return "characterization report consistency";
        case 9: return "algebraic invariant suite";
        case 10: return "oracle equivalences";
    }
    return "";
}

/// Runs the whole battery. Deterministic under seed; designed to finish in
/// well under two minutes single-threaded.
inline std::vector<CheckResult> run_battery(std::uint64_t seed = 7) {
    detail::Battery b;
    auto guarded = [&](int crit, const char* name, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& ex) {
            b.checks.push_back({std::string(name) + "_exception: " + ex.what(), crit, 0.0, 1.0,
                                0.0, false});
        }
    };
    guarded(1, "multiplication_radii", [&] { detail::multiplication_radii(b, seed); });
    guarded(4, "t_operator", [&] { detail::t_operator_checks(b, seed); });
    guarded(5, "index", [&] { detail::index_checks(b, seed); });
    guarded(8, "report", [&] { detail::report_checks(b, seed); });
    guarded(9, "properties", [&] { detail::property_checks(b, seed); });
    guarded(10, "oracles", [&] { detail::oracle_checks(b, seed); });
    return b.checks;
}

}  // namespace verify
}  // namespace jbt

#endif
