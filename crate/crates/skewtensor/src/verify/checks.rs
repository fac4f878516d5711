//! The registered checks.

use serde_json::json;

use super::props;
use super::{CheckRecord as R, Ctx, Provenance as P, RunConfig, Status as S, Task};
use crate::chow::blowup::{blowup_ledger_audit, segre_routes, BlowupLedger};
use crate::chow::table::{k3_and_square_map, printed_table};
use crate::chow::{porteous_c4, x4_h_numbers};
use crate::configurations::{cremona_richmond_report, enumerate_pentads, pentad_report, petersen_and_1036};
use crate::count::{audit_grothendieck_at, count_model, expected_polynomial, fit_polynomial, integral, probe, CountStatus};
use crate::error::Error;
use crate::field::FieldTag;
use crate::modp::ModTheta;
use crate::models::cubic::{interpolation_corank, segre_cubic, singular_at, DEFAULT_SEED};
use crate::models::igusa::{compare_printed, duality_check};
use crate::models::ozeki::{check_tables, ozeki_data, ozeki_theta};
use crate::models::quadrics::{battery_report, build_battery, C4_PRIME, C4_SAMPLES, C4_SEED};
use crate::models::{cremona_planes_check, igusa_quartic, pijk_configuration, rank2_locus, verify_lifts};
use crate::multilinear::ModelId;
use crate::rep::bott::{bott, FactorWeight, GLWeight};
use crate::rep::koszul::koszul_table;
use crate::rep::sn::{s5_decompose, s5_irreducible, table_is_orthogonal, SnCharacter};
use crate::rep::{pic_and_chow_types, s6_outer_check};

fn task(prefix: &str, f: impl Fn(&Ctx) -> Vec<R> + Send + Sync + 'static) -> Task {
    Task { prefix: prefix.into(), run: Box::new(f) }
}

/// Run `f`; an error becomes one failing record.
fn guarded(id: &str, locus: &str, f: impl FnOnce() -> crate::error::Result<Vec<R>>) -> Vec<R> {
    f().unwrap_or_else(|e| vec![R::error(id, locus, &e)])
}

fn slug(s: &str) -> String {
    let mut out = String::new();
    for c in s.chars() {
        if c.is_ascii_alphanumeric() {
            out.push(c.to_ascii_lowercase());
        } else if !out.ends_with('_') {
            out.push('_');
        }
    }
    out.trim_matches('_').to_string()
}

pub(crate) fn tasks(config: &RunConfig) -> Vec<Task> {
    let mut v = Vec::new();
    for &p in &config.primes {
        v.push(task(&format!("count.p{p}"), move |c| counts_at(c, p)));
    }
    v.push(task("count.x4_fit", count_fit));
    v.push(task("chow.c4", chow_c4));
    v.push(task("chow.x", chow_x4));
    v.push(task("chow.ledger", chow_ledger));
    v.push(task("chow.square_map", chow_square_map));
    v.push(task("rep.sn", rep_sn));
    v.push(task("rep.bott", rep_bott));
    v.push(task("rep.koszul", rep_koszul));
    v.push(task("rep.s6", rep_s6));
    v.push(task("config", config_checks));
    v.push(task("models.theta", models_theta));
    v.push(task("models.ozeki", models_ozeki));
    v.push(task("models.cubic", models_cubic));
    v.push(task("models.igusa", models_igusa));
    v.push(task("models.c4_quadrics", models_quadrics));
    v.push(task("audit.grothendieck", audit_grothendieck));
    v.push(task("prop", properties));
    v
}

fn counts_at(c: &Ctx, p: u64) -> Vec<R> {
    let locus = "counts";
    let pr = probe(&c.theta, p);
    let mut out = vec![R::flag(&format!("count.p{p}.probe"), locus, "good reduction", P::Derived, pr.good, if pr.good { "good reduction" } else { "bad reduction" }).with_detail(&pr)];
    if !pr.good {
        for m in ModelId::ALL {
            out.push(R::new(&format!("count.p{p}.{}", slug(&m.name().replace('\'', "p"))), locus, S::Skipped, "-", P::Paper, "prime fails the reduction probe"));
        }
        return out;
    }
    let res = ModTheta::reduce(&c.theta, p).and_then(|mt| crate::count::count_all(&mt));
    match res {
        Err(e) => out.push(R::error(&format!("count.p{p}.sweeps"), locus, &e)),
        Ok((sweeps, results)) => {
            for r in results {
                let id = format!("count.p{p}.{}", slug(&r.model.name().replace('\'', "p")));
                let prov = if matches!(r.model, ModelId::X4 | ModelId::X6 | ModelId::X8 | ModelId::X8p) { P::Paper } else { P::Derived };
                out.push(match (r.status, &r.expected) {
                    (CountStatus::NoExpectation, _) | (_, None) => R::new(&id, locus, S::Skipped, "no closed form", P::Trivial, r.measured),
                    (_, Some(poly)) => {
                        R::flag(&id, locus, format!("{} = {}", poly, r.expected_value.unwrap_or_default()), prov, r.status == CountStatus::Match, r.measured)
                    }
                });
            }
            out.push(R::new(&format!("count.p{p}.sweeps"), locus, S::Pass, "rank histograms", P::Trivial, "recorded").with_detail(&sweeps));
        }
    }
    out
}

fn count_fit(c: &Ctx) -> Vec<R> {
    let locus = "counts";
    guarded("count.x4_fit.betti", locus, || {
        let mut primes: Vec<u64> = c.config.primes.iter().chain(&c.config.fit_primes).copied().collect();
        primes.sort_unstable();
        primes.dedup();
        let mut samples = Vec::new();
        for &p in &primes {
            if !probe(&c.theta, p).good {
                continue;
            }
            let mt = ModTheta::reduce(&c.theta, p)?;
            samples.push((p, count_model(ModelId::X4, &mt)?.measured));
        }
        if samples.len() < 5 {
            let why = format!("{} good primes; a quartic fit needs 5", samples.len());
            return Ok(vec![
                R::new("count.x4_fit.betti", locus, S::Skipped, "-", P::Paper, &why),
                R::new("count.x4_fit.chi_top", locus, S::Skipped, "-", P::Derived, &why),
            ]);
        }
        let fit = fit_polynomial(&samples, 4).and_then(|f| integral(&f));
        let want = expected_polynomial(ModelId::X4).expect("X4 has one").0;
        let chi = x4_h_numbers()?.chi_top;
        let detail = json!({ "samples": samples });
        let Some(fit) = fit else {
            return Ok(vec![
                R::new("count.x4_fit.betti", locus, S::Fail, format!("{want:?}"), P::Paper, format!("no integral quartic fit from {} primes", samples.len())).with_detail(detail),
                R::new("count.x4_fit.chi_top", locus, S::Fail, chi, P::Derived, "no fit"),
            ]);
        };
        let sum: i64 = fit.iter().sum();
        Ok(vec![
            R::compare("count.x4_fit.betti", locus, format!("{want:?}"), P::Paper, format!("{fit:?}"), S::Fail).with_detail(detail),
            R::compare("count.x4_fit.chi_top", locus, chi, P::Derived, sum, S::Fail),
        ])
    })
}

fn chow_c4(_: &Ctx) -> Vec<R> {
    let locus = "chow";
    guarded("chow.c4.class", locus, || {
        let r = porteous_c4()?;
        Ok(vec![
            R::flag("chow.c4.class", locus, "3s11 + 2s2 on G(2,5)", P::Paper, r.matches_printed(), &r.class_g25).with_detail(&r),
            R::compare("chow.c4.degree", locus, 12, P::Paper, r.degree, S::Fail),
            R::compare("chow.c4.rank1_codim", locus, 6, P::Paper, r.rank1_codim, S::Fail),
            R::compare("chow.c4.rank1_points", locus, 10, P::Paper, r.rank1_points, S::Fail),
        ])
    })
}

fn chow_x4(_: &Ctx) -> Vec<R> {
    let locus = "chow";
    guarded("chow.x4.h_numbers", locus, || {
        let h = x4_h_numbers()?;
        let hs = |x: &[i64]| x.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        Ok(vec![
            R::compare("chow.x4.h_numbers", locus, "2,6,13,14,12", P::Paper, hs(&h.h), S::Fail).with_detail(&h),
            R::compare("chow.x4.h2_fourth", locus, 12, P::Paper, h.h[4], S::Fail),
            R::flag("chow.x4.minus_k", locus, "H1 + H2", P::Paper, h.minus_k_is_h1_plus_h2, &h.minus_k),
            R::compare("chow.x4.k4", locus, 172, P::Paper, h.k4, S::Fail),
            R::compare("chow.x4.k4_from_h_numbers", locus, h.k4, P::Derived, h.k4_binomial, S::Fail),
            R::compare("chow.x4.chi_top", locus, 31, P::Paper, h.chi_top, S::Fail),
            R::flag("chow.x8p.index_three", locus, "-K = 3(H1 + H2)", P::Paper, h.x8p_index_three, &h.x8p_minus_k),
        ])
    })
}

fn chow_ledger(_: &Ctx) -> Vec<R> {
    let locus = "ledger";
    guarded("chow.ledger.self_consistent", locus, || {
        let h = x4_h_numbers()?.h;
        let a = blowup_ledger_audit(h);
        let mut out = vec![
            R::flag("chow.ledger.self_consistent", locus, "S5-invariant, E-contraction zero, F^4 consistent", P::Derived, a.self_consistent, a.self_consistent)
                .with_detail(json!({ "contraction_defects": a.contraction_defects, "table": a.recomputed_table, "hff_and_fff_vanish": a.hff_and_fff_vanish })),
            R::compare("chow.ledger.h_numbers", locus, format!("{:?}", a.reference_h_numbers), P::Derived, format!("[{}]", a.recomputed_h_numbers.join(", ")), S::Fail),
            R::compare("chow.ledger.f4", locus, &a.forced_f4, P::Derived, &a.multinomial_f4, S::Fail),
            R::flag("chow.ledger.normal_segre_routes", locus, "tangent sequences = twist", P::Derived, a.segre.routes_agree, &a.segre.from_tangent_sequences).with_detail(&a.segre),
            R::flag("chow.ledger.dp5_chern", locus, "1 + (3h - sum l) + 7pt", P::Trivial, a.segre.dp5_euler_ok, &a.segre.c_tangent_sigma),
        ];
        for d in &a.discrepancies {
            out.push(
                R::new(&format!("chow.ledger.printed.{}", slug(&d.quantity)), locus, S::PaperDiscrepancy, &d.printed, P::Paper, &d.recomputed)
                    .with_detail(json!({ "quantity": d.quantity })),
            );
        }
        Ok(out)
    })
}

fn chow_square_map(_: &Ctx) -> Vec<R> {
    let locus = "chow";
    guarded("chow.square_map.printed.rank", locus, || {
        let printed = k3_and_square_map(&printed_table())?;
        let h = x4_h_numbers()?.h;
        let rec = k3_and_square_map(&BlowupLedger::new(segre_routes().1).x4_table("recomputed"))?;
        let ph4 = printed_table().h_numbers()[4].to_string();
        Ok(vec![
            R::compare("chow.square_map.printed.rank", locus, 17, P::Paper, printed.gram_rank, S::Fail),
            R::compare("chow.square_map.printed.kernel", locus, "U4", P::Paper, &printed.kernel_type, S::Fail),
            R::compare("chow.square_map.printed.image", locus, "4U1 + 2U4 + U5", P::Paper, &printed.image_type, S::Fail),
            R::compare("chow.square_map.s2a1", locus, "4U1 + 3U4 + U5", P::Paper, &printed.s2a1_type, S::Fail),
            R::flag("chow.square_map.printed.uvw_relation", locus, "u = w = 1, v = -2 in the kernel", P::Paper, printed.uvw_relation_in_kernel, printed.uvw_relation_in_kernel),
            R::flag("chow.square_map.printed.k3_numbers", locus, "6,14,13,1,5,-2,0", P::Paper, printed.k3.matches_printed(), format!("{:?}", printed.k3)),
            R::compare("chow.square_map.printed.h2_fourth", locus, h[4], P::Paper, ph4, S::PaperDiscrepancy),
            R::flag(
                "chow.square_map.recomputed.rank_nullity",
                locus,
                21,
                P::Trivial,
                rec.gram_rank + rec.kernel_dim == 21,
                format!("rank {} + kernel {} ({}; image {})", rec.gram_rank, rec.kernel_dim, rec.kernel_type, rec.image_type),
            )
            .with_detail(&rec),
        ])
    })
}

fn rep_sn(_: &Ctx) -> Vec<R> {
    let locus = "rep";
    guarded("rep.sn.s2_u4", locus, || {
        let u4 = s5_irreducible("U4").expect("label");
        let u5 = s5_irreducible("U5").expect("label");
        let (s2u4, a2u4) = u4.sym_alt_square();
        let (_, a2u5) = u5.sym_alt_square();
        let (s2a2u5, _) = a2u5.sym_alt_square();
        let d = |c: &SnCharacter| s5_decompose(c).map(|x| x.to_string());
        let square = k3_and_square_map(&printed_table())?;
        let types = pic_and_chow_types(&square)?;
        let h22 = expected_polynomial(ModelId::X4).expect("X4").0[2];
        let pic_a1 = SnCharacter::trivial(5).add(&SnCharacter::natural(5));
        let (s2pic, _) = pic_a1.sym_alt_square();
        Ok(vec![
            R::flag("rep.sn.s5_orthogonality", locus, "orthogonal", P::Trivial, table_is_orthogonal(5), table_is_orthogonal(5)),
            R::flag("rep.sn.s6_orthogonality", locus, "orthogonal", P::Trivial, table_is_orthogonal(6), table_is_orthogonal(6)),
            R::compare("rep.sn.s2_u4", locus, "U1 + U4 + U5", P::Paper, d(&s2u4)?, S::Fail),
            R::compare("rep.sn.a2_u4", locus, "U6", P::Paper, d(&a2u4)?, S::Fail),
            R::compare("rep.sn.a2_u5", locus, "U4- + U6", P::Paper, d(&a2u5)?, S::Fail),
            R::compare("rep.sn.u4minus_in_s2_a2_u5", locus, 1, P::Paper, s5_decompose(&s2a2u5)?.mult("U4-"), S::Fail),
            R::compare("rep.sn.natural", locus, "U1 + U4", P::Trivial, &types.permutation_on_five, S::Fail),
            R::compare("rep.sn.pic_type", locus, "2U1 + U4", P::Paper, &types.pic_type, S::Fail),
            R::compare("rep.sn.s2_pic", locus, "4U1 + 3U4 + U5", P::Paper, d(&s2pic)?, S::Fail),
            R::compare("rep.sn.a2_type", locus, "4U1 + 2U4 + U5", P::Paper, &types.image_type, S::Fail),
            R::compare("rep.sn.a2_dim", locus, h22, P::Derived, types.image_dim, S::Fail),
        ])
    })
}

fn rep_bott(_: &Ctx) -> Vec<R> {
    let locus = "rep";
    let g = |u: Vec<i64>, q: Vec<i64>| GLWeight { factors: vec![FactorWeight::new(u, q)] };
    let prod = |u1: Vec<i64>, u2: Vec<i64>| GLWeight { factors: vec![FactorWeight::new(u1, vec![0, 0]), FactorWeight::new(u2, vec![0, 0])] };
    let u_dual = bott(&g(vec![1, 0], vec![0, 0])).table(4);
    let o11 = bott(&prod(vec![1, 1], vec![1, 1, 1])).table(10);
    let e_dual_11 = crate::rep::koszul::cohomology(&crate::rep::koszul::lambda_k_of_e_dual(1).into_iter().map(|(w, c)| (w.twist(&[1, 1]), c)).collect::<Vec<_>>());
    let only_h0 = |t: &[u128], n: u128| t[0] == n && t[1..].iter().all(|&x| x == 0);
    vec![
        R::flag("rep.bott.u_dual_g24", locus, "h0 = 4", P::Trivial, only_h0(&u_dual, 4), format!("{u_dual:?}")),
        R::flag("rep.bott.o11", locus, "h0 = 60", P::Paper, only_h0(&o11, 60), format!("{o11:?}")),
        R::flag("rep.bott.e_dual_11", locus, "h0 = 20", P::Paper, only_h0(&e_dual_11, 20), format!("{e_dual_11:?}")),
    ]
}

fn rep_koszul(_: &Ctx) -> Vec<R> {
    let locus = "rep";
    let r = koszul_table();
    let mut out = vec![
        R::compare("rep.koszul.cauchy_ranks", locus, "[1, 6, 15, 20, 15, 6, 1]", P::Trivial, format!("{:?}", r.cauchy_ranks), S::Fail),
        R::compare("rep.koszul.h0_minus_k", locus, 40, P::Paper, r.h0_minus_k, S::Fail).with_detail(json!({ "twisted_terms": r.twisted_terms })),
        R::compare("rep.koszul.chi_minus_k", locus, r.h0_minus_k, P::Derived, r.chi_minus_k, S::Fail),
        R::flag("rep.koszul.higher_terms_vanish", locus, "only h0 for k <= 1, nothing for k > 1", P::Paper, r.sections_pattern_holds, r.sections_pattern_holds),
        R::compare("rep.koszul.chi_tx", locus, 0, P::Paper, r.chi_tx, S::Fail),
    ];
    let offending: Vec<String> = r.vanishings.iter().flat_map(|v| v.offending.iter().map(move |o| format!("{}: {o}", v.bundle))).collect();
    out.push(
        R::flag("rep.koszul.rigidity", locus, "all required groups vanish", P::Paper, r.rigidity_holds(), if offending.is_empty() { "all vanish".into() } else { offending.join("; ") })
            .with_detail(&r.vanishings),
    );
    out
}

fn rep_s6(_: &Ctx) -> Vec<R> {
    let locus = "rep";
    let r = s6_outer_check(&enumerate_pentads());
    vec![
        R::flag("rep.s6.bijective", locus, "S6 -> S6 bijective", P::Derived, r.bijective, r.bijective),
        R::flag("rep.s6.transposition_image", locus, "three disjoint transpositions", P::Paper, r.transpositions_to_triple && r.image_of_12.matches('(').count() == 3, &r.image_of_12),
        R::compare("rep.s6.stabilizer_orders", locus, "[120, 120, 120, 120, 120, 120]", P::Paper, format!("{:?}", r.stabilizer_orders), S::Fail),
        R::flag("rep.s6.stabilizer_no_transposition", locus, "no transposition", P::Derived, r.stabilizers_without_transpositions, r.stabilizers_without_transpositions),
    ]
}

fn config_checks(c: &Ctx) -> Vec<R> {
    let locus = "config";
    guarded("config.pentads.count", locus, || {
        let p = pentad_report(c.config.seed, 100)?;
        let cr = cremona_richmond_report()?;
        let pet = petersen_and_1036(&ozeki_theta(), &ozeki_data())?;
        Ok(vec![
            R::compare("config.pentads.count", locus, 6, P::Paper, p.count, S::Fail),
            R::flag("config.pentads.printed_table", locus, "printed table up to order", P::Paper, p.matches_printed, p.matches_printed).with_detail(&p.pentads),
            R::flag("config.pentads.each_matching_twice", locus, "every matching in 2 pentads", P::Trivial, p.each_matching_in_two, p.each_matching_in_two),
            R::flag("config.pentads.transitive", locus, "one S6 orbit", P::Paper, p.transitive, p.transitive),
            R::flag("config.pentads.homomorphism", locus, "action is a homomorphism", P::Derived, p.homomorphism_holds, format!("{} random pairs", p.homomorphism_pairs))
                .with_detail(json!({ "seed": p.homomorphism_seed })),
            R::flag("config.cremona_richmond.parameters", locus, "(15_3, 15_3), linear", P::Paper, cr.is_15_3_15_3 && cr.linear, cr.is_15_3_15_3 && cr.linear),
            R::flag("config.cremona_richmond.self_dual", locus, "isomorphic to its transpose", P::Paper, cr.self_dual, cr.self_dual)
                .with_detail(json!({ "points": cr.duality_points, "blocks": cr.duality_blocks })),
            R::flag("config.cremona_richmond.meetings", locus, "0 shared pairs: point; 1: line", P::Paper, cr.meet_in_point && cr.meet_in_line, cr.meet_in_point && cr.meet_in_line),
            R::flag("config.petersen.abstract", locus, "(10_3, 5_6)", P::Paper, pet.abstract_10_3_5_6, pet.abstract_10_3_5_6),
            R::flag(
                "config.petersen.graph",
                locus,
                "10 vertices, 15 edges, 3-regular, girth 5",
                P::Derived,
                pet.vertices == 10 && pet.edges == 15 && pet.regular_degree == Some(3) && pet.girth == Some(5),
                format!("{} vertices, {} edges, degree {:?}, girth {:?}", pet.vertices, pet.edges, pet.regular_degree, pet.girth),
            ),
            R::flag("config.petersen.from_tensor", locus, "p_i in H_jk iff i not in {j,k}", P::Paper, pet.ozeki_matches_abstract, pet.ozeki_matches_abstract)
                .with_detail(&pet.ozeki_incidence),
        ])
    })
}

fn models_theta(c: &Ctx) -> Vec<R> {
    let locus = "models";
    let candidates = (c.config.theta == super::ThetaSource::Ozeki).then(|| ozeki_data().points);
    let locus_res = rank2_locus(&c.theta, candidates.as_deref());
    let mut out = Vec::new();
    match locus_res {
        Err(e) => {
            out.push(R::new("models.theta.rank2_locus", locus, S::Fail, "5 rank-two points in general position", P::Paper, format!("error: {e}")));
            return out;
        }
        Ok(l) => {
            out.push(R::compare("models.theta.rank2_locus", locus, 5, P::Paper, l.points.len(), S::Fail));
            out.push(R::compare("models.theta.l0_size", locus, 10, P::Paper, l.e.len(), S::Fail));
            let r = segre_cubic(&c.theta, Some(&l));
            out.push(match r {
                Ok(_) => R::new("models.theta.cubic_singular_at_e", locus, S::Pass, "singular at the ten e_pq", P::Paper, "singular at all ten"),
                Err(e) => R::new("models.theta.cubic_singular_at_e", locus, S::Fail, "singular at the ten e_pq", P::Paper, format!("error: {e}")),
            });
        }
    }
    out
}

fn models_ozeki(_: &Ctx) -> Vec<R> {
    let locus = "models";
    guarded("models.ozeki.tables", locus, || {
        let theta = ozeki_theta();
        let t = check_tables(&theta, &ozeki_data())?;
        let l = verify_lifts()?;
        let pj = pijk_configuration()?;
        let mut out = vec![
            R::flag("models.ozeki.tables", locus, "theta(p_k) ~ omega_k, e_pq spans P_p meet P_q", P::Paper, t.passed(), t.passed()).with_detail(&t),
            R::flag("models.ozeki.lifts", locus, "sign lift (12), cycle lift k -> k+1", P::Paper, l.passed(), l.passed()).with_detail(&l),
            R::flag("models.ozeki.pijk_points", locus, "15 distinct points p_ijk", P::Paper, pj.points_ok(), pj.distinct_points).with_detail(&pj),
            R::flag("models.ozeki.pijk_restricted_15_4_10_6", locus, "(15_4, 10_6)", P::Paper, pj.restricted_is_15_4_10_6(), format!("{:?} / {:?}", pj.restricted_row_sums, pj.restricted_column_sums)),
        ];
        out.push(if l.literal_matches() {
            R::new("models.ozeki.lifts_literal", locus, S::Pass, "k -> k+1", P::Paper, "k -> k+1")
        } else {
            R::new("models.ozeki.lifts_literal", locus, S::PaperDiscrepancy, "[2, 3, 4, 5, 1]", P::Paper, l.cycle_permutation_literal.as_ref().map_or("not a permutation".to_string(), |v| format!("{v:?}")))
        });
        let full = format!("{:?} / {:?}", pj.row_sums, pj.column_sums);
        out.push(if pj.full_is_15_4_10_6() {
            R::new("models.ozeki.pijk_containment_15_4_10_6", locus, S::Pass, "(15_4, 10_6)", P::Paper, full)
        } else {
            R::new("models.ozeki.pijk_containment_15_4_10_6", locus, S::PaperDiscrepancy, "(15_4, 10_6)", P::Paper, full)
        });
        Ok(out)
    })
}

fn models_cubic(c: &Ctx) -> Vec<R> {
    let locus = "models";
    guarded("models.cubic.corank", locus, || {
        let theta = ozeki_theta();
        let data = ozeki_data();
        let corank = interpolation_corank(&theta, DEFAULT_SEED)?;
        let l = rank2_locus(&theta, Some(&data.points))?;
        let f = segre_cubic(&theta, None)?;
        let mut singular = 0;
        for e in data.e.values() {
            singular += usize::from(singular_at(&f, e)?);
        }
        let planes = cremona_planes_check(&f)?;
        let corank_theta = interpolation_corank(&c.theta, DEFAULT_SEED)?;
        Ok(vec![
            R::compare("models.cubic.corank", locus, 1, P::Derived, corank, S::Fail),
            R::compare("models.cubic.singular_at_e", locus, 10, P::Paper, singular, S::Fail),
            R::compare("models.cubic.locus_e_agree", locus, 10, P::Derived, l.e.len(), S::Fail),
            R::flag("models.cubic.planes", locus, "15 planes; pentad planes meet pairwise in points", P::Paper, planes.passed(), planes.planes_on_cubic).with_detail(&planes),
            R::compare("models.cubic.corank_configured_theta", locus, 1, P::Derived, corank_theta, S::Fail),
        ])
    })
}

fn models_igusa(c: &Ctx) -> Vec<R> {
    let locus = "models";
    guarded("models.igusa.duality", locus, || {
        let theta = ozeki_theta();
        let f = segre_cubic(&theta, None)?;
        let form = igusa_quartic(&theta)?;
        let cmp = compare_printed(&form)?;
        let dual = duality_check(&theta, &f, &form, 100, c.config.seed)?;
        Ok(vec![
            R::compare("models.igusa.duality", locus, dual.samples, P::Derived, dual.on_computed_quartic, S::Fail)
                .with_detail(json!({ "seed": c.config.seed, "on_printed_quartic": dual.on_printed_quartic })),
            R::flag("models.igusa.gram_matches_printed_matrix", locus, "Q_h = -(printed matrix) after h4 -> -h4", P::Paper, cmp.gram_matches_after_h4_flip, cmp.gram_matches_after_h4_flip),
            if cmp.det_proportional_to_printed {
                R::new("models.igusa.printed_quartic", locus, S::Pass, "det(Q_h) ~ printed quartic", P::Paper, "proportional")
            } else {
                R::new("models.igusa.printed_quartic", locus, S::PaperDiscrepancy, "det(Q_h) ~ printed quartic", P::Paper, format!("not proportional; printed - det(printed matrix) = {}", cmp.printed_minus_det_printed_matrix))
                    .with_detail(&cmp)
            },
        ])
    })
}

fn models_quadrics(_: &Ctx) -> Vec<R> {
    let locus = "models";
    guarded("models.c4_quadrics.vanishing", locus, || {
        let b = build_battery()?;
        let r = battery_report(&b, C4_PRIME, C4_SAMPLES, C4_SEED)?;
        let status = if r.c4_vanishing == r.c4_samples { S::Pass } else { S::PaperDiscrepancy };
        Ok(vec![
            R::compare("models.c4_quadrics.span", locus, 4, P::Paper, r.cq_span, S::Fail),
            R::flag("models.c4_quadrics.plucker", locus, "Pluecker relations", P::Trivial, r.plucker_relations && r.all_apolar, r.plucker_relations && r.all_apolar),
            R::new("models.c4_quadrics.vanishing", locus, status, format!("vanish at {} sampled points of C4", r.c4_samples), P::Paper, format!("vanish at {}", r.c4_vanishing))
                .with_detail(&r),
        ])
    })
}

fn audit_grothendieck(c: &Ctx) -> Vec<R> {
    let locus = "audit";
    let primes: Vec<u64> = c.config.primes.iter().copied().filter(|&p| probe(&c.theta, p).good).collect();
    guarded("audit.grothendieck.coefficient", locus, || {
        if primes.len() < 2 {
            return Err(Error::BadPrime(0, "the audit needs two primes of good reduction".into()));
        }
        let a = audit_grothendieck_at(&c.theta, &primes)?;
        let rel = if a.printed_relation_holds { S::Pass } else { S::PaperDiscrepancy };
        Ok(vec![
            R::new("audit.grothendieck.printed_relation", locus, rel, "[X6] + L^3 [Y0] = [G(3,5)] + L [X4], [Y0] = 5", P::Paper, format!("discrepancies {:?}", a.rows.iter().map(|r| r.discrepancy).collect::<Vec<_>>()))
                .with_detail(&a.rows),
            R::flag(
                "audit.grothendieck.coefficient",
                locus,
                "one coefficient c for all primes",
                P::Derived,
                a.constant_coefficient.is_some(),
                a.constant_coefficient.map_or("varies".to_string(), |x| format!("c = {x}")),
            ),
        ])
    })
}

fn properties(c: &Ctx) -> Vec<R> {
    let locus = "properties";
    let seed = c.config.seed;
    let mut out = Vec::new();
    let fa = props::field_axioms(seed, 200);
    out.push(R::flag("prop.field_axioms", locus, "ring axioms and inverses", P::Trivial, fa.passed(), format!("{} cases", fa.cases)).with_detail(&fa));
    out.push(match props::whitney_sums(seed ^ 1, 50) {
        Ok(w) => R::flag("prop.whitney", locus, "c(A + B) = c(A) c(B)", P::Trivial, w.passed(), format!("{} pairs", w.cases)).with_detail(&w),
        Err(e) => R::error("prop.whitney", locus, &e),
    });
    let bs = props::bott_serre_duality(seed ^ 2, 20);
    out.push(R::flag("prop.bott_serre", locus, "h^i(W) = h^(d-i)(W^* K)", P::Trivial, bs.passed(), format!("{} weights", bs.cases)).with_detail(&bs));
    let candidates = (c.config.theta == super::ThetaSource::Ozeki).then(|| ozeki_data().points);
    let points = rank2_locus(&c.theta, candidates.as_deref()).map(|l| l.points).unwrap_or_default();
    out.push(match props::pencil_gl_invariance(&c.theta, &points, seed ^ 3, 24) {
        Ok(r) => R::flag("prop.pencil_gl_invariance", locus, "class unchanged", P::Trivial, r.run.passed(), format!("{} cases, {} failures", r.run.cases, r.run.failures.len())).with_detail(&r),
        Err(e) => R::error("prop.pencil_gl_invariance", locus, &e),
    });
    let p = c.config.primes.iter().copied().filter(|&p| c.theta.tag() != FieldTag::Cyclotomic12 || p % 12 == 1).min().unwrap_or(13);
    out.push(match props::thread_determinism(&c.theta, p, &[1, 8]) {
        Ok(t) => R::flag("prop.thread_determinism", locus, "identical sweeps on 1 and 8 threads", P::Derived, t.identical, t.identical).with_detail(json!({ "prime": t.prime, "threads": t.threads })),
        Err(e) => R::error("prop.thread_determinism", locus, &e),
    });
    out
}
