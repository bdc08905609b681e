//! The verification suites: every identity the library claims, packaged
//! as named pass/fail checks. The acceptance test target and the CLI
//! `suite` subcommand both run these.

use num_traits::{One, Zero};
use serde::Serialize;

use crate::diagram::{BrauerDiagram, ScaledDiagram};
use crate::enhanced;
use crate::error::Result;
use crate::functor::{
    self, equivariant_hom, functor_oriented, functor_sum, gl_ops, power_word,
    Factor, TensorOperator,
};
use crate::invariants;
use crate::oriented::{generators as og, walled_brauer_basis, OrientedDiagram};
use crate::poly::{factorial, rat, Poly, Rat};
use crate::space::{Group, SuperSpace};
use crate::sum::DiagramSum;
use crate::word::{self, build_word, from_diagram, Word};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, detail: detail.into() }
    }

    fn equal<T: PartialEq + std::fmt::Debug>(name: impl Into<String>, lhs: T, rhs: T) -> Self {
        let pass = lhs == rhs;
        let detail = if pass {
            String::from("equal")
        } else {
            format!("lhs {lhs:?} != rhs {rhs:?}")
        };
        Check { name: name.into(), pass, detail }
    }
}

pub fn all_pass(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.pass)
}

/// Criterion 1: the presentation relations and their reflection transforms
/// hold under diagram semantics with a symbolic loop parameter.
pub fn presentation_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let sum = |d: BrauerDiagram| DiagramSum::from_diagram(d);
    let id = |r: usize| DiagramSum::identity(r);
    let x = sum(BrauerDiagram::cross());
    let a = sum(BrauerDiagram::cap());
    let u = sum(BrauerDiagram::cup());

    // identity relations
    out.push(Check::equal("identity absorbs on both sides of X", id(2).compose(&x)?, x.clone()));
    out.push(Check::equal("cap after the identity", a.compose(&id(2))?, a.clone()));
    out.push(Check::equal("identity after the cup", id(2).compose(&u)?, u.clone()));
    // the relation pairs and every reflection transform, through the word
    // rule inventory: each rule instance is evaluated as diagrams and
    // compared with its loop power
    for rule in [
        word::Rule::DoubleCross,
        word::Rule::Braid,
        word::Rule::CapCross,
        word::Rule::CrossCup,
        word::Rule::LoopRemoval,
        word::Rule::SlideCap,
        word::Rule::SlideCup,
        word::Rule::StraightenA,
        word::Rule::StraightenB,
    ] {
        for r in 0..2 {
            for s in 0..2 {
                let (lhs_slices, rhs_slices, gain) = word::rule_patterns(rule, r, s);
                let k = lhs_slices[0].in_width();
                let lhs = Word::new(k, lhs_slices)?.evaluate();
                let mut rhs = Word::new(k, rhs_slices)?.evaluate();
                rhs.loops += gain;
                out.push(Check::equal(
                    format!("{rule:?} at margins ({r}, {s})"),
                    scaled_to_sum(&lhs),
                    scaled_to_sum(&rhs),
                ));
            }
        }
    }
    Ok(out)
}

fn scaled_to_sum(v: &ScaledDiagram) -> DiagramSum {
    DiagramSum::from_scaled(v.clone())
}

/// Criterion 2: any two independently generated words for a diagram are
/// joined by an explicit trace; exhaustive up to the given total boundary
/// size.
pub fn word_completeness_checks(max_total: usize) -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let mut joined = 0usize;
    let mut failures = Vec::new();
    for total in (0..=max_total).step_by(2) {
        for k in 0..=total {
            let ell = total - k;
            for d in BrauerDiagram::enumerate(k, ell) {
                let w1 = from_diagram(&d);
                let w2 = build_word(&d);
                match word::rewrite_trace(&w1, &w2) {
                    Ok(steps) => match word::replay(&w1, &steps) {
                        Ok(end)
                            if end.word.slices() == w2.slices() && end.loops == 0 =>
                        {
                            joined += 1;
                        }
                        _ => failures.push(format!("{d:?}: replay mismatch")),
                    },
                    Err(e) => failures.push(format!("{d:?}: {e}")),
                }
            }
        }
    }
    out.push(Check::new(
        format!("all diagrams with k+l <= {max_total} joined by a trace"),
        failures.is_empty(),
        if failures.is_empty() {
            format!("{joined} diagrams")
        } else {
            failures.join("; ")
        },
    ));
    Ok(out)
}

/// Criterion 3: the antisymmetrizer identities as exact polynomial
/// identities of formal sums.
pub fn sigma_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for eps in [1i64, -1] {
        for r in 2..=5usize {
            let sig_r = DiagramSum::symmetrizer(r, eps);
            let sig_prev = DiagramSum::symmetrizer(r - 1, eps).tensor(&DiagramSum::identity(1));
            // recursion: Sigma_r = Sigma_{r-1} x I - eps/(r-2)! middle term
            let swap = DiagramSum::identity(r - 2)
                .tensor(&DiagramSum::from_diagram(BrauerDiagram::cross()));
            let middle = sig_prev.compose(&swap)?.compose(&sig_prev)?;
            let coeff = Rat::from_integer((-eps).into()) / factorial(r - 2);
            let rhs = sig_prev.add(&middle.scale_rat(&coeff))?;
            out.push(Check::equal(
                format!("double-coset recursion r={r} eps={eps}"),
                sig_r.clone(),
                rhs,
            ));
            // single-strand closure: -eps (r-1-eps delta) Sigma_{r-1}
            let closed = sig_r.partial_close(1)?;
            let factor = &Poly::constant(rat(-eps) * rat(r as i64 - 1))
                + &Poly::monomial(rat(eps) * rat(eps), 1);
            let rhs = DiagramSum::symmetrizer(r - 1, eps).scale(&factor);
            out.push(Check::equal(
                format!("single-strand closure r={r} eps={eps}"),
                closed,
                rhs,
            ));
            // crossed closure: bend the top-right strand to the bottom
            let cap_block = DiagramSum::identity(r - 1)
                .tensor(&DiagramSum::from_diagram(BrauerDiagram::cap()));
            let lhs = cap_block.compose(&sig_r.tensor(&DiagramSum::identity(1)))?;
            let mut rhs = DiagramSum::zero(r + 1, r - 1);
            for i in 0..r {
                // hook joining bottom r-i with bottom r+1; other strands
                // pass through in order (top nodes start at k+1 = r+2)
                let mut pairs = vec![(r - i, r + 1)];
                let mut top = r + 2;
                for b in 1..=r + 1 {
                    if b != r - i && b != r + 1 {
                        pairs.push((b, top));
                        top += 1;
                    }
                }
                let hook = DiagramSum::from_diagram(BrauerDiagram::new(r + 1, r - 1, pairs)?);
                let term = DiagramSum::symmetrizer(r - 1, eps).compose(&hook)?;
                let sign = if eps == 1 && i % 2 == 1 { -Rat::one() } else { Rat::one() };
                rhs = rhs.add(&term.scale_rat(&sign))?;
            }
            out.push(Check::equal(
                format!("crossed closure r={r} eps={eps}"),
                lhs,
                rhs,
            ));
            // quasi-idempotency
            out.push(Check::equal(
                format!("squared antisymmetrizer r={r} eps={eps}"),
                sig_r.compose(&sig_r)?,
                sig_r.scale_rat(&factorial(r)),
            ));
        }
    }
    // the capped-and-cupped closure identity (eps = -1)
    for r in 2..=5usize {
        for k in 0..=2usize {
            if 2 * k > r {
                continue;
            }
            let sig_r = DiagramSum::symmetrizer(r, -1);
            let cup = DiagramSum::from_diagram(BrauerDiagram::cup());
            let cap = DiagramSum::from_diagram(BrauerDiagram::cap());
            let mut cups_k = DiagramSum::identity(r - 2 * k);
            for _ in 0..k {
                cups_k = cups_k.tensor(&cup);
            }
            let cap_top = DiagramSum::identity(r - 2).tensor(&cap);
            let lhs = cap_top.compose(&sig_r)?.compose(&cups_k)?;
            // first term: 4k(r + delta/2 - k - 1) Sigma(r-2) with k-1 cups
            let mut cups_k1 = DiagramSum::identity(r - 2 * k);
            for _ in 0..k.saturating_sub(1) {
                cups_k1 = cups_k1.tensor(&cup);
            }
            let first = if k == 0 {
                DiagramSum::zero(r - 2 * k, r - 2)
            } else {
                let poly = &Poly::constant(rat(4 * k as i64) * rat(r as i64 - k as i64 - 1))
                    + &Poly::monomial(rat(2 * k as i64), 1);
                DiagramSum::symmetrizer(r - 2, -1)
                    .compose(&cups_k1)?
                    .scale(&poly)
            };
            // second term present only when r - 2 - 2k >= 0
            let rhs = if r >= 2 * k + 2 {
                let mut cups_top = DiagramSum::identity(r - 2 - 2 * k);
                for _ in 0..k {
                    cups_top = cups_top.tensor(&cup);
                }
                let upper = DiagramSum::symmetrizer(r - 2, -1).compose(&cups_top)?;
                let lower = DiagramSum::identity(r - 2 * k - 2)
                    .tensor(&cap)
                    .compose(&DiagramSum::symmetrizer(r - 2 * k, -1))?;
                let second = upper.compose(&lower)?.scale_rat(
                    &(Rat::one() / factorial(r - 2 - 2 * k)),
                );
                first.add(&second)?
            } else {
                first
            };
            out.push(Check::equal(
                format!("capped closure r={r} k={k}"),
                lhs,
                rhs,
            ));
        }
    }
    Ok(out)
}

/// Criterion 4: the generator-image relations on orthosymplectic spaces
/// and the general linear relation family.
pub fn functor_relation_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for group in [
        Group::Orthogonal(1),
        Group::Orthogonal(2),
        Group::Orthogonal(3),
        Group::Symplectic(2),
        Group::OrthoSymplectic(2, 2),
    ] {
        let space = group.space();
        let ops = functor::generator_ops(space);
        let name = group.name();
        let id1 = TensorOperator::identity(space, power_word(1));
        let id2 = TensorOperator::identity(space, power_word(2));
        out.push(Check::equal(
            format!("{name}: swap squares to the identity"),
            ops.swap.compose(&ops.swap)?,
            id2.clone(),
        ));
        let pi = ops.swap.tensor(&id1);
        let ip = id1.tensor(&ops.swap);
        out.push(Check::equal(
            format!("{name}: braid relation"),
            pi.compose(&ip)?.compose(&pi)?,
            ip.compose(&pi)?.compose(&ip)?,
        ));
        out.push(Check::equal(
            format!("{name}: swap fixes the invariant element"),
            ops.swap.compose(&ops.coform)?,
            ops.coform.clone(),
        ));
        out.push(Check::equal(
            format!("{name}: the form absorbs a swap"),
            ops.form.compose(&ops.swap)?,
            ops.form.clone(),
        ));
        out.push(Check::new(
            format!("{name}: form after coform is the superdimension"),
            ops.form.compose(&ops.coform)?.matrix.at(0, 0) == &rat(group.sdim()),
            format!("sdim = {}", group.sdim()),
        ));
        out.push(Check::equal(
            format!("{name}: left zigzag"),
            ops.form.tensor(&id1).compose(&id1.tensor(&ops.coform))?,
            id1.clone(),
        ));
        out.push(Check::equal(
            format!("{name}: right zigzag"),
            id1.tensor(&ops.form).compose(&ops.coform.tensor(&id1))?,
            id1.clone(),
        ));
        out.push(Check::equal(
            format!("{name}: cap slides across the swap"),
            ops.form.tensor(&id1).compose(&id1.tensor(&ops.swap))?,
            id1.tensor(&ops.form).compose(&ops.swap.tensor(&id1))?,
        ));
        out.push(Check::equal(
            format!("{name}: cup slides across the swap"),
            ops.swap.tensor(&id1).compose(&id1.tensor(&ops.coform))?,
            id1.tensor(&ops.swap).compose(&ops.coform.tensor(&id1))?,
        ));
    }
    for group in [
        Group::GeneralLinear(1, 0),
        Group::GeneralLinear(2, 0),
        Group::GeneralLinear(1, 1),
        Group::GeneralLinear(2, 1),
    ] {
        out.extend(gl_relation_checks(&group)?);
    }
    Ok(out)
}

fn gl_relation_checks(group: &Group) -> Result<Vec<Check>> {
    use Factor::{Dual, V};
    let space = group.space();
    let ops = gl_ops(space);
    let name = group.name();
    let mut out = Vec::new();
    let id_v = TensorOperator::identity(space, vec![V]);
    let id_d = TensorOperator::identity(space, vec![Dual]);
    // inverse pairs of swaps
    out.push(Check::equal(
        format!("{name}: swaps invert (V, V)"),
        ops.swap_vv.compose(&ops.swap_vv)?,
        TensorOperator::identity(space, vec![V, V]),
    ));
    out.push(Check::equal(
        format!("{name}: swaps invert (V, V*)"),
        ops.swap_dv.compose(&ops.swap_vd)?,
        TensorOperator::identity(space, vec![V, Dual]),
    ));
    out.push(Check::equal(
        format!("{name}: swaps invert (V*, V*)"),
        ops.swap_dd.compose(&ops.swap_dd)?,
        TensorOperator::identity(space, vec![Dual, Dual]),
    ));
    // braid on V
    let pi = ops.swap_vv.tensor(&id_v);
    let ip = id_v.tensor(&ops.swap_vv);
    out.push(Check::equal(
        format!("{name}: braid relation"),
        pi.compose(&ip)?.compose(&pi)?,
        ip.compose(&pi)?.compose(&ip)?,
    ));
    // nested caps and cups
    let hat2_pm = ops
        .eval_vd
        .compose(&id_v.tensor(&ops.eval_vd).tensor(&id_d))?;
    let hat2_mp = ops
        .eval_dv
        .compose(&id_d.tensor(&ops.eval_dv).tensor(&id_v))?;
    let check2_pm = id_v.tensor(&ops.coeval_vd).tensor(&id_d).compose(&ops.coeval_vd)?;
    let check2_mp = id_d.tensor(&ops.coeval_dv).tensor(&id_v).compose(&ops.coeval_dv)?;
    let id_d2 = id_d.tensor(&id_d);
    // dual swap through caps and cups, both routes
    let route1 = hat2_mp
        .tensor(&id_d2)
        .compose(&id_d2.tensor(&ops.swap_vv).tensor(&id_d2))?
        .compose(&id_d2.tensor(&check2_pm))?;
    out.push(Check::equal(
        format!("{name}: dual swap through caps, first route"),
        route1,
        ops.swap_dd.clone(),
    ));
    let route2 = id_d2
        .tensor(&hat2_pm)
        .compose(&id_d2.tensor(&ops.swap_vv).tensor(&id_d2))?
        .compose(&check2_mp.tensor(&id_d2))?;
    out.push(Check::equal(
        format!("{name}: dual swap through caps, second route"),
        route2,
        ops.swap_dd.clone(),
    ));
    // mixed swaps through a single cap and cup
    let mixed_dv = ops
        .eval_dv
        .tensor(&id_v)
        .tensor(&id_d)
        .compose(&id_d.tensor(&ops.swap_vv).tensor(&id_d))?
        .compose(&id_d.tensor(&id_v).tensor(&ops.coeval_vd))?;
    out.push(Check::equal(
        format!("{name}: mixed swap (V*, V) through caps"),
        mixed_dv,
        ops.swap_dv.clone(),
    ));
    let mixed_vd = id_d
        .tensor(&id_v)
        .tensor(&ops.eval_vd)
        .compose(&id_d.tensor(&ops.swap_vv).tensor(&id_d))?
        .compose(&ops.coeval_dv.tensor(&id_v).tensor(&id_d))?;
    out.push(Check::equal(
        format!("{name}: mixed swap (V, V*) through caps"),
        mixed_vd,
        ops.swap_vd.clone(),
    ));
    // evaluation after coevaluation is the superdimension
    out.push(Check::new(
        format!("{name}: eval after coeval is the superdimension"),
        ops.eval_vd.compose(&ops.coeval_vd)?.matrix.at(0, 0) == &rat(group.sdim())
            && ops.eval_dv.compose(&ops.coeval_dv)?.matrix.at(0, 0) == &rat(group.sdim()),
        format!("sdim = {}", group.sdim()),
    ));
    // the four zigzags
    out.push(Check::equal(
        format!("{name}: zigzag on V, first"),
        ops.eval_vd.tensor(&id_v).compose(&id_v.tensor(&ops.coeval_dv))?,
        id_v.clone(),
    ));
    out.push(Check::equal(
        format!("{name}: zigzag on V, second"),
        id_v.tensor(&ops.eval_dv).compose(&ops.coeval_vd.tensor(&id_v))?,
        id_v.clone(),
    ));
    out.push(Check::equal(
        format!("{name}: zigzag on the dual, first"),
        ops.eval_dv.tensor(&id_d).compose(&id_d.tensor(&ops.coeval_vd))?,
        id_d.clone(),
    ));
    out.push(Check::equal(
        format!("{name}: zigzag on the dual, second"),
        id_d.tensor(&ops.eval_vd).compose(&ops.coeval_dv.tensor(&id_d))?,
        id_d.clone(),
    ));
    // the twist
    let twist = id_v
        .tensor(&ops.eval_vd)
        .compose(&ops.swap_vv.tensor(&id_d))?
        .compose(&id_v.tensor(&ops.coeval_vd))?;
    out.push(Check::equal(format!("{name}: twist composite"), twist, id_v.clone()));
    Ok(out)
}

/// Criterion 5: the enhanced-category checks.
pub fn enhanced_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in [2usize, 3] {
        for r in enhanced::check_relations(m)? {
            out.push(Check::new(format!("m={m}: {}", r.name), r.pass, ""));
        }
    }
    for m in 2..=6usize {
        let (_, _, common) = enhanced::forced_parameters(m);
        out.push(Check::new(
            format!("m={m}: the loop parameter is forced to m"),
            common == vec![rat(m as i64)],
            format!("common roots {common:?}"),
        ));
    }
    for m in 1..=3usize {
        out.push(Check::new(
            format!("m={m}: the next antisymmetrizer vanishes"),
            enhanced::sigma_vanishing(m),
            "",
        ));
    }
    for m in [2usize, 3] {
        for s in 0..=4usize {
            for t in 0..=4 - s {
                let report = enhanced::fullness_check(m, s, t, 1_000_000)?;
                out.push(Check::new(
                    format!("m={m}: fullness at ({s}, {t})"),
                    report.pass,
                    format!(
                        "plain {} + one-generator {} = oracle {}",
                        report.plain_rank, report.delta_rank, report.oracle_dim
                    ),
                ));
            }
        }
    }
    Ok(out)
}

/// Criterion 6: the symplectic kernel element suite.
pub fn phi_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    // n = 1: the sum of all three diagrams
    let phi1 = invariants::phi_element(1)?;
    let expected = DiagramSum::identity(2)
        .add(&DiagramSum::from_diagram(BrauerDiagram::s_i(2, 1)?))?
        .add(&DiagramSum::from_diagram(BrauerDiagram::e_i(2, 1)?))?;
    out.push(Check::equal("n=1: sum of all diagrams", phi1, expected));
    for n in 1..=3usize {
        let phi = invariants::phi_element(n)?;
        let all = BrauerDiagram::enumerate(n + 1, n + 1);
        let is_full_sum =
            phi.len() == all.len() && all.iter().all(|d| phi.coeff_of(d) == Poly::one());
        out.push(Check::new(
            format!("n={n}: equals the sum of all diagrams"),
            is_full_sum,
            format!("{} terms", phi.len()),
        ));
        let at = rat(-2 * n as i64);
        let square = phi.compose(&phi)?.specialize(&at);
        out.push(Check::equal(
            format!("n={n}: square is (n+1)! times itself"),
            square,
            phi.specialize(&at).scale_rat(&factorial(n + 1)),
        ));
        let mut killed = true;
        for i in 1..=n {
            let ei = DiagramSum::from_diagram(BrauerDiagram::e_i(n + 1, i)?);
            killed &= ei.compose(&phi)?.specialize(&at).is_zero();
            killed &= phi.compose(&ei)?.specialize(&at).is_zero();
        }
        out.push(Check::new(format!("n={n}: contractions kill it"), killed, ""));
    }
    for n in [1usize, 2] {
        let phi = invariants::phi_element(n)?;
        let space = SuperSpace::new(0, 2 * n);
        let image = functor_sum(space, &phi);
        out.push(Check::new(
            format!("sp{}: functor image vanishes", 2 * n),
            image.is_zero(),
            "",
        ));
        if n == 1 {
            out.push(Check::new(
                "sp2: supertrace of the image is zero",
                image.supertrace()?.is_zero(),
                "",
            ));
        }
    }
    for n in 1..=4usize {
        out.push(Check::new(
            format!("n={n}: alternating binomial sum vanishes"),
            invariants::phi_trace_binomial_sum(n).is_zero(),
            "",
        ));
    }
    Ok(out)
}

/// Criterion 7: the orthogonal kernel elements.
pub fn ep_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    for m in 1..=3usize {
        let at = rat(m as i64);
        for i in 0..=m + 1 {
            let diagrammatic = invariants::e_element_diagrammatic(m, i)?;
            let formula = invariants::e_element_formula(m, i)?;
            out.push(Check::equal(
                format!("m={m}: E_{i} diagrammatic equals the closed formula"),
                diagrammatic.clone(),
                formula,
            ));
            let opposite = invariants::e_element_diagrammatic(m, m + 1 - i)?;
            out.push(Check::equal(
                format!("m={m}: rotation sends E_{i} to E_{}", m + 1 - i),
                diagrammatic.star_sharp(),
                opposite.clone(),
            ));
            let x_fwd = DiagramSum::from_diagram(BrauerDiagram::x_cross(i, m + 1 - i));
            let x_bwd = DiagramSum::from_diagram(BrauerDiagram::x_cross(m + 1 - i, i));
            out.push(Check::equal(
                format!("m={m}: braiding conjugation sends E_{i} to E_{}", m + 1 - i),
                x_fwd.compose(&diagrammatic)?.compose(&x_bwd)?,
                opposite,
            ));
            // sandwiching and annihilation at the specialised loop value
            let f_i = invariants::f_element(m, i);
            let scale = factorial(i) * factorial(m + 1 - i);
            let left = f_i.compose(&diagrammatic)?.specialize(&at);
            let right = diagrammatic.compose(&f_i)?.specialize(&at);
            let expected = diagrammatic.specialize(&at).scale_rat(&scale);
            out.push(Check::new(
                format!("m={m}: double antisymmetrizer sandwich for E_{i}"),
                left == expected && right == expected,
                "",
            ));
            let mut killed = true;
            for j in 1..=m {
                let ej = DiagramSum::from_diagram(BrauerDiagram::e_i(m + 1, j)?);
                killed &= ej.compose(&diagrammatic)?.specialize(&at).is_zero();
                killed &= diagrammatic.compose(&ej)?.specialize(&at).is_zero();
            }
            out.push(Check::new(format!("m={m}: contractions kill E_{i}"), killed, ""));
        }
        // every low-through diagram annihilates every E_i
        let mut all_killed = true;
        for d in BrauerDiagram::enumerate(m + 1, m + 1) {
            if d.through_strings() == m + 1 {
                continue;
            }
            let ds = DiagramSum::from_diagram(d);
            for i in 0..=m + 1 {
                let e_i = invariants::e_element_diagrammatic(m, i)?;
                all_killed &= ds.compose(&e_i)?.specialize(&at).is_zero();
                all_killed &= e_i.compose(&ds)?.specialize(&at).is_zero();
            }
        }
        out.push(Check::new(
            format!("m={m}: low-through diagrams annihilate every E_i"),
            all_killed,
            "",
        ));
    }
    Ok(out)
}

/// Criterion 8: first-fundamental-theorem instances.
pub fn fft_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let budget = 10_000_000usize;
    for m in [2usize, 3] {
        let group = Group::Orthogonal(m);
        for total in 0..=6usize {
            for k in 0..=total {
                let l = total - k;
                let report = invariants::verify_fft(&group, k, l, budget)?;
                out.push(Check::new(
                    format!("o{m}: rank matches the oracle at ({k}, {l})"),
                    report.pass,
                    format!("rank {} vs oracle {}", report.functor_rank, report.oracle_dim),
                ));
            }
        }
    }
    for total in 0..=4usize {
        for k in 0..=total {
            let l = total - k;
            let report = invariants::verify_fft(&Group::Symplectic(2), k, l, budget)?;
            out.push(Check::new(
                format!("sp2: rank matches the oracle at ({k}, {l})"),
                report.pass,
                format!("rank {} vs oracle {}", report.functor_rank, report.oracle_dim),
            ));
        }
    }
    for r in 1..=2usize {
        let report = invariants::verify_fft(&Group::GeneralLinear(2, 1), r, r, budget)?;
        out.push(Check::new(
            format!("gl2|1: rank matches the oracle at degree {r}"),
            report.pass,
            format!("rank {} vs oracle {}", report.functor_rank, report.oracle_dim),
        ));
    }
    // stability range: dim End O(3) on degree r is (2r-1)!! for r <= 3
    for r in [2usize, 3] {
        let oracle =
            equivariant_hom(&Group::Orthogonal(3), &power_word(r), &power_word(r), budget)?;
        let expected = crate::diagram::double_factorial_count(2 * r) as usize;
        out.push(Check::new(
            format!("o3: endomorphism dimension at degree {r} is (2r-1)!!"),
            oracle.len() == expected,
            format!("{} vs {}", oracle.len(), expected),
        ));
    }
    Ok(out)
}

/// Criterion 9: second-fundamental-theorem instances.
pub fn sft_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let budget = 10_000_000usize;
    let report = invariants::verify_sft(&Group::Orthogonal(1), 2, budget)?;
    out.push(Check::new(
        "o1 degree 2: kernel is the ideal of E_1, dimension 2",
        report.pass && report.kernel_dim == 2,
        format!("kernel {} ideal {}", report.kernel_dim, report.ideal_dim),
    ));
    let report = invariants::verify_sft(&Group::Symplectic(2), 2, budget)?;
    out.push(Check::new(
        "sp2 degree 2: kernel is the ideal of the kernel element, dimension 1",
        report.pass && report.kernel_dim == 1,
        format!("kernel {} ideal {}", report.kernel_dim, report.ideal_dim),
    ));
    let report = invariants::verify_sft(&Group::GeneralLinear(1, 0), 2, budget)?;
    out.push(Check::new(
        "gl1|0 degree 2: kernel is the ideal of the rectangle element",
        report.pass,
        format!("kernel {} ideal {}", report.kernel_dim, report.ideal_dim),
    ));
    // the mixed tensor ideal vanishes below the critical size: the
    // rectangle element maps to zero, so the ideal sits inside the functor
    // kernel, which is itself zero on every hom space with k + l = 2
    let group = Group::OrthoSymplectic(1, 2);
    let y = invariants::young_idempotent(1, 2)?;
    let space = group.space();
    let generator_dies = functor_sum(space, &y.element).is_zero();
    let mut kernels_trivial = true;
    for (k, l) in [(1usize, 1usize), (2, 0), (0, 2)] {
        kernels_trivial &= invariants::kernel_basis(&group, k, l, budget)?.is_empty();
    }
    out.push(Check::new(
        "osp1|2: the tensor ideal vanishes on hom spaces of total size 2",
        generator_dies && kernels_trivial,
        "generator image is zero and the functor kernels are trivial",
    ));
    Ok(out)
}

/// Criterion 10: the oriented suite.
pub fn oriented_checks() -> Result<Vec<Check>> {
    let mut out = Vec::new();
    let identities = oriented_relation_identities()?;
    for (name, lhs, rhs) in &identities {
        out.push(Check::equal(format!("diagram level: {name}"), lhs, rhs));
    }
    // loop removal at the diagram level
    let (d, loops) = og::cap_plus_minus().compose(&og::cup_plus_minus())?;
    out.push(Check::new(
        "diagram level: loop removal, clockwise",
        d.diagram().pairs().is_empty() && loops == 1,
        "",
    ));
    let (d, loops) = og::cap_minus_plus().compose(&og::cup_minus_plus())?;
    out.push(Check::new(
        "diagram level: loop removal, anticlockwise",
        d.diagram().pairs().is_empty() && loops == 1,
        "",
    ));
    // under the functor on the two test spaces
    for group in [Group::GeneralLinear(2, 0), Group::GeneralLinear(1, 1)] {
        let space = group.space();
        for (name, lhs, rhs) in &identities {
            let (ld, ln) = lhs;
            let (rd, rn) = rhs;
            let delta = rat(group.sdim());
            let mut fl = functor_oriented(space, ld);
            for _ in 0..*ln {
                fl = fl.scale(&delta);
            }
            let mut fr = functor_oriented(space, rd);
            for _ in 0..*rn {
                fr = fr.scale(&delta);
            }
            out.push(Check::equal(format!("{}: {name}", group.name()), fl, fr));
        }
    }
    // walled dimensions
    for r in 0..=4usize {
        for s in 0..=4 - r {
            let expected: usize = (1..=r + s).product::<usize>().max(1);
            let found = walled_brauer_basis(r, s).len();
            out.push(Check::new(
                format!("walled basis ({r}, {s}) has size (r+s)!"),
                found == expected,
                format!("{found} vs {expected}"),
            ));
        }
    }
    // arc counts on pseudo-random oriented diagrams
    let mut rng_state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        rng_state ^= rng_state << 13;
        rng_state ^= rng_state >> 7;
        rng_state ^= rng_state << 17;
        rng_state
    };
    let mut all_ok = true;
    let mut count = 0usize;
    while count < 1000 {
        let total = 2 * (1 + (next() % 4) as usize); // 2, 4, 6, 8 nodes
        let k = (next() % (total as u64 + 1)) as usize;
        let ell = total - k;
        let diagrams = BrauerDiagram::enumerate(k, ell);
        if diagrams.is_empty() {
            continue;
        }
        let d = diagrams[(next() % diagrams.len() as u64) as usize].clone();
        let tails: Vec<usize> = d
            .pairs()
            .iter()
            .map(|&(a, b)| if next() % 2 == 0 { a } else { b })
            .collect();
        let arcs = d.pairs().len();
        let gamma = OrientedDiagram::new(d, tails)?;
        let (sp, sm) = gamma.source().sign_counts();
        let (tp, tm) = gamma.target().sign_counts();
        all_ok &= tp + sm == arcs && sp + tm == arcs;
        count += 1;
    }
    out.push(Check::new(
        "arc-count identity on 1000 random oriented diagrams",
        all_ok,
        "",
    ));
    Ok(out)
}

type OrientedValue = (OrientedDiagram, usize);

/// Both sides of each oriented presentation relation, as composed
/// generator diagrams with their loop counts.
fn oriented_relation_identities() -> Result<Vec<(String, OrientedValue, OrientedValue)>> {
    let mut out = Vec::new();
    let id_p = og::id_plus();
    let id_m = og::id_minus();
    let x = og::cross();
    // (a) involution of the crossing
    let (xx, n) = x.compose(&x)?;
    out.push((
        "crossing involution".into(),
        (xx, n),
        (id_p.tensor(&id_p), 0),
    ));
    // (b) braid relation
    let xi = x.tensor(&id_p);
    let ix = id_p.tensor(&x);
    let (l1, a1) = xi.compose(&ix)?;
    let (l2, a2) = l1.compose(&xi)?;
    let (r1, b1) = ix.compose(&xi)?;
    let (r2, b2) = r1.compose(&ix)?;
    out.push(("braid relation".into(), (l2, a2 + a1), (r2, b2 + b1)));
    // (c) straightening, downward and upward
    let (s1, n1) = og::cap_plus_minus()
        .tensor(&id_p)
        .compose(&id_p.tensor(&og::cup_minus_plus()))?;
    out.push(("straightening downward, first".into(), (s1, n1), (id_p.clone(), 0)));
    let (s2, n2) = id_p
        .tensor(&og::cap_minus_plus())
        .compose(&og::cup_plus_minus().tensor(&id_p))?;
    out.push(("straightening downward, second".into(), (s2, n2), (id_p.clone(), 0)));
    let (s3, n3) = og::cap_minus_plus()
        .tensor(&id_m)
        .compose(&id_m.tensor(&og::cup_plus_minus()))?;
    out.push(("straightening upward, first".into(), (s3, n3), (id_m.clone(), 0)));
    let (s4, n4) = id_m
        .tensor(&og::cap_plus_minus())
        .compose(&og::cup_minus_plus().tensor(&id_m))?;
    out.push(("straightening upward, second".into(), (s4, n4), (id_m.clone(), 0)));
    // (d) orientation-reversed crossing: the dual-dual crossing built from
    // caps and cups two ways; both equal the upward crossing
    let up_cross = OrientedDiagram::new(BrauerDiagram::cross(), vec![1, 2])?;
    let id_d2 = id_m.tensor(&id_m);
    let hat2_mp = {
        let inner = id_m.tensor(&og::cap_minus_plus()).tensor(&id_p);
        let (mid, a) = og::cap_minus_plus().compose(&inner)?;
        debug_assert_eq!(a, 0);
        mid
    };
    let check2_pm = {
        let outer = id_p.tensor(&og::cup_plus_minus()).tensor(&id_m);
        let (mid, a) = outer.compose(&og::cup_plus_minus())?;
        debug_assert_eq!(a, 0);
        mid
    };
    let (step1, c1) = id_d2.tensor(&x).tensor(&id_d2).compose(&id_d2.tensor(&check2_pm))?;
    let (lhs_d, c2) = hat2_mp.tensor(&id_d2).compose(&step1)?;
    out.push((
        "orientation-reversed crossing, first route".into(),
        (lhs_d, c1 + c2),
        (up_cross.clone(), 0),
    ));
    let hat2_pm = {
        let inner = id_p.tensor(&og::cap_plus_minus()).tensor(&id_m);
        let (mid, a) = og::cap_plus_minus().compose(&inner)?;
        debug_assert_eq!(a, 0);
        mid
    };
    let check2_mp = {
        let outer = id_m.tensor(&og::cup_minus_plus()).tensor(&id_p);
        let (mid, a) = outer.compose(&og::cup_minus_plus())?;
        debug_assert_eq!(a, 0);
        mid
    };
    let (step1, c1) = id_d2.tensor(&x).tensor(&id_d2).compose(&check2_mp.tensor(&id_d2))?;
    let (rhs_d, c2) = id_d2.tensor(&hat2_pm).compose(&step1)?;
    out.push((
        "orientation-reversed crossing, second route".into(),
        (rhs_d, c1 + c2),
        (up_cross, 0),
    ));
    // (e) sliding relations: mixed swaps through one cap and cup equal the
    // mixed crossings
    let mixed_dv = OrientedDiagram::new(BrauerDiagram::cross(), vec![1, 3])?;
    let (step1, c1) = id_m
        .tensor(&x)
        .tensor(&id_m)
        .compose(&id_m.tensor(&id_p).tensor(&og::cup_plus_minus()))?;
    let (lhs_e, c2) = og::cap_minus_plus().tensor(&id_p).tensor(&id_m).compose(&step1)?;
    out.push((
        "sliding relation, first".into(),
        (lhs_e, c1 + c2),
        (mixed_dv, 0),
    ));
    let mixed_vd = OrientedDiagram::new(BrauerDiagram::cross(), vec![4, 2])?;
    let (step1, c1) = id_m
        .tensor(&x)
        .tensor(&id_m)
        .compose(&og::cup_minus_plus().tensor(&id_p).tensor(&id_m))?;
    let (rhs_e, c2) = id_m.tensor(&id_p).tensor(&og::cap_plus_minus()).compose(&step1)?;
    out.push((
        "sliding relation, second".into(),
        (rhs_e, c1 + c2),
        (mixed_vd, 0),
    ));
    // (f) de-loop: the twist composite is a plain strand
    let (step1, c1) = x.tensor(&id_m).compose(&id_p.tensor(&og::cup_plus_minus()))?;
    let (tw, c2) = id_p.tensor(&og::cap_plus_minus()).compose(&step1)?;
    out.push(("de-loop twist".into(), (tw, c1 + c2), (id_p.clone(), 0)));
    Ok(out)
}

/// The named suites exposed by the command line; each maps to one
/// acceptance criterion.
pub fn suite_names() -> Vec<&'static str> {
    vec![
        "presentation",
        "words",
        "sigma-lemmas",
        "functor-relations",
        "enhanced",
        "phi",
        "ep",
        "fft",
        "sft",
        "oriented",
    ]
}

pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    match name {
        "presentation" => presentation_checks(),
        "words" => word_completeness_checks(8),
        "sigma-lemmas" => sigma_checks(),
        "functor-relations" => functor_relation_checks(),
        "enhanced" => enhanced_checks(),
        "phi" => phi_checks(),
        "ep" => ep_checks(),
        "fft" => fft_checks(),
        "sft" => sft_checks(),
        "oriented" => oriented_checks(),
        other => Err(crate::error::Error::Parse(format!("unknown suite {other:?}"))),
    }
}
