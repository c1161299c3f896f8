//! Identity checks over C: the degree-4/degree-5 special-value identities
//! and Legendre relation, the D=4 closed forms, the well-poised and
//! Kummer transformations at seeded parameters, and the appendix battery
//! of period/L-value relations. Every record compares two sides computed
//! along disjoint routes.

use super::gamma::{beta, gamma_quotient_real, gamma_real};
use super::hyp::{f32_unit_extrapolated, f_at_minus_one};
use super::lvalue::{
    l_k1_closed, lvalue_combination, lvalue_eta, omega_c, Combination,
};
use super::pvalue::p_value;
use super::{rel_agree, rel_agree_complex, rel_residual, rel_residual_complex, show, show_complex, Ctx};
use crate::datum::{
    g2_pair, make_hd4, rat, rat_int, to_i64, HypergeometricDatum, Rat, WhippleVariant,
};
use crate::error::{Error, Result};
use crate::qseries::eta::{k2_quotient, EtaQuotient};
use crate::qseries::fixtures::fixtures;
use crate::report::VerificationRecord;
use rug::{Complex, Float};
use std::time::Instant;

fn record(id: &str) -> (VerificationRecord, Instant) {
    (VerificationRecord::new(id), Instant::now())
}

fn finish(
    mut rec: VerificationRecord,
    start: Instant,
    lhs: &Float,
    rhs: &Float,
    tol_exp: u32,
    ctx: &Ctx,
) -> VerificationRecord {
    let ok = rel_agree(lhs, rhs, &ctx.tol(tol_exp));
    rec = rec
        .sides(show(lhs, 30), show(rhs, 30))
        .modulus(format!("1e-{tol_exp}"))
        .error_bound(format!("{:.3e}", rel_residual(lhs, rhs)))
        .status(ok);
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

fn finish_complex(
    mut rec: VerificationRecord,
    start: Instant,
    lhs: &Complex,
    rhs: &Complex,
    tol_exp: u32,
    ctx: &Ctx,
) -> VerificationRecord {
    let ok = rel_agree_complex(lhs, rhs, &ctx.tol(tol_exp));
    rec = rec
        .sides(show_complex(lhs, 30), show_complex(rhs, 30))
        .modulus(format!("1e-{tol_exp}"))
        .error_bound(format!("{:.3e}", rel_residual_complex(lhs, rhs)))
        .status(ok);
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

/// F(HD4(j/12); -1) or F(HD5(j/12); -1) by alternating acceleration,
/// cross-checked against the symbolic reduction to a unit-argument series.
pub fn f_minus1(j: i64, variant: WhippleVariant, ctx: &Ctx) -> Result<Float> {
    let hd4 = make_hd4(j)?;
    let direct = match variant {
        WhippleVariant::Length4 => f_at_minus_one(&hd4, None, ctx)?,
        WhippleVariant::Length5 => {
            // the very-well-poised column telescopes to 1 + (2/r) k
            let r = rat(j, 12);
            let c1 = rat_int(2) / &r;
            f_at_minus_one(&hd4, Some((&rat_int(1), &c1)), ctx)?
        }
    };
    let (prefactor, target) = crate::datum::whipple_reduce(j, variant)?;
    let via = gamma_quotient_real(&prefactor, ctx)? * f32_unit_extrapolated(&target, ctx)?;
    if !rel_agree(&direct, &via, &ctx.tol((ctx.digits / 2).min(28))) {
        return Err(Error::Consistency(format!(
            "acceleration and reduction routes disagree for j={j} ({:?}): {direct} vs {via}",
            variant
        )));
    }
    Ok(direct)
}

/// The two degree-4/5 special-value identities and the Legendre relation
/// for one column index j, each to the stated relative tolerance.
pub fn classical_deg4_checks(j: i64, tol_exp: u32, ctx: &Ctx) -> Result<Vec<VerificationRecord>> {
    g2_pair(j)?;
    let r = rat(j, 12);
    let om = omega_c(j, ctx)?;
    let front = ctx.two_pow(&(rat_int(2) - rat(j, 2)));
    let mut out = Vec::new();

    // length 4: 2^{j/2-4} Om F(HD4;-1) = L(K(j/12),1) L(K2(1-j/24,1+j/24),1);
    // the Beta-to-L conversion constant carries 2^{j-6} relative to the
    // degree-5 line, pinned by split-integral L-values on both factors
    let (rec, start) = record("classical:deg4-identity");
    let front4 = ctx.two_pow(&(rat(j, 2) - rat_int(4)));
    let lhs = front4 * om.clone() * f_minus1(j, WhippleVariant::Length4, ctx)?;
    let l_k = l_k1_closed(&((rat_int(1) - &r) / rat_int(2)), &(rat_int(1) + &r / rat_int(2)), ctx)?;
    let q1 = (rat_int(1) - rat(j, 24), rat_int(1) + rat(j, 24));
    let l_k2 = lvalue_eta(&k2_quotient(&q1.0, &q1.1)?, 1, 1, ctx)?;
    let rhs = l_k.clone() * l_k2;
    out.push(finish(rec.param("j", j), start, &lhs, &rhs, tol_exp, ctx));

    // length 5: 2^{2-j/2} Om F(HD5;-1) = -L(E(j/12),1) L(K2((12-j)/24,(12+j)/24),1)
    let (rec, start) = record("classical:deg5-identity");
    let lhs = front.clone() * om * f_minus1(j, WhippleVariant::Length5, ctx)?;
    let l_e = super::lvalue::l_weight2_noncuspidal(&r, ctx)?;
    let q2 = (rat(12 - j, 24), rat(12 + j, 24));
    let l_k2b = lvalue_eta(&k2_quotient(&q2.0, &q2.1)?, 1, 1, ctx)?;
    let rhs = -l_e.clone() * l_k2b;
    out.push(finish(rec.param("j", j), start, &lhs, &rhs, tol_exp, ctx));

    // Legendre relation: L(K,1) L(E,1) = -3 2^{4-j/2} pi / (j sin(pi j/12))
    let (rec, start) = record("classical:legendre-relation");
    let lhs = l_k * l_e;
    let sin = (ctx.pi() * ctx.rat(&r)).sin();
    let rhs = ctx.float(-3) * ctx.two_pow(&(rat_int(4) - rat(j, 2))) * ctx.pi()
        / (ctx.float(j) * sin);
    out.push(finish(rec.param("j", j), start, &lhs, &rhs, tol_exp, ctx));
    Ok(out)
}

/// Numeric coefficient of a fixture member descriptor like "-2i*sqrt(7)".
fn parse_coeff(desc: &str, ctx: &Ctx) -> Result<Complex> {
    let mut s = desc.trim();
    let mut sign = ctx.float(1);
    if let Some(rest) = s.strip_prefix('-') {
        sign = ctx.float(-1);
        s = rest;
    }
    let (mut body, sqrt_arg) = match s.split_once("*sqrt(") {
        Some((b, tail)) => {
            let arg: i64 = tail
                .strip_suffix(')')
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad coeff `{desc}`") })?;
            (b.to_string(), Some(arg))
        }
        None => (s.to_string(), None),
    };
    let imaginary = body.ends_with('i');
    if imaginary {
        body.pop();
    }
    let mag: i64 = if body.is_empty() {
        1
    } else {
        body.parse().map_err(|_| Error::Parse { pos: 0, msg: format!("bad coeff `{desc}`") })?
    };
    let mut v = sign * ctx.float(mag);
    if let Some(a) = sqrt_arg {
        v *= ctx.float(a).sqrt();
    }
    Ok(if imaginary {
        ctx.complex(ctx.float(0), v)
    } else {
        ctx.complex(v, ctx.float(0))
    })
}

/// The weight-3 fixture combination at its fixture scale, with numeric
/// coefficients and the level for the integral split. Twist characters
/// act through the support class of each member.
fn k2_combination_numeric(d: u64, twist: Option<&str>, ctx: &Ctx) -> Result<Combination> {
    k2_combination_embedded(d, twist, false, ctx)
}

/// As above, with the opposite choice of the imaginary unit when `conj`
/// is set (the functional-equation rows fix embeddings independently).
fn k2_combination_embedded(d: u64, twist: Option<&str>, conj: bool, ctx: &Ctx) -> Result<Combination> {
    let fx = fixtures();
    let combo = fx.k2_combination(d)?;
    let mut members = Vec::new();
    for m in &combo.members {
        let mut c = parse_coeff(&m.coeff, ctx)?;
        if conj {
            c = c.conj();
        }
        if let Some(t) = twist {
            // leading exponent of the member at the fixture scale
            let lead = (&m.r / rat_int(2)) * rat_int(combo.scale_n as i64);
            let l = to_i64(lead.numer());
            c *= ctx.float(twist_value(t, l as u64)?);
        }
        members.push((c, k2_quotient(&m.r, &m.s)?.scaled(combo.scale_n)));
    }
    Ok(Combination { members, level: combo.scale_n * combo.scale_n })
}

/// Quadratic character value at an odd positive class representative.
fn twist_value(name: &str, n: u64) -> Result<i64> {
    let m8 = n % 8;
    let minus_one = if n % 4 == 1 { 1i64 } else { -1 };
    let two = if m8 == 1 || m8 == 7 { 1i64 } else { -1 };
    Ok(match name {
        "-1" => minus_one,
        "-2" => minus_one * two,
        "3" => match n % 12 {
            1 | 11 => 1,
            5 | 7 => -1,
            _ => return Err(Error::Parameter(format!("class {n} not prime to 12"))),
        },
        "-3" => match n % 3 {
            1 => 1,
            2 => -1,
            _ => return Err(Error::Parameter(format!("class {n} not prime to 3"))),
        },
        other => return Err(Error::Parameter(format!("unknown twist `{other}`"))),
    })
}

/// The D=4 closed-form bullets: the two displayed special values, the
/// closed form of the weight-2 L-value, and the two-series expression of
/// the weight-3 L-value.
pub fn d4_complex_checks(tol_exp: u32, ctx: &Ctx) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let l_f2_split = super::lvalue::lvalue_k1_split(&rat(1, 4), &rat(5, 4), 8, ctx)?;

    // closed form of L(f2, 1)
    let (rec, start) = record("classical:d4-weight2-lvalue");
    let g = gamma_real(&rat(1, 4), ctx)? * gamma_real(&rat(1, 2), ctx)?
        / gamma_real(&rat(3, 4), ctx)?;
    let closed = g / ctx.float(8);
    out.push(finish(rec, start, &l_f2_split, &closed, tol_exp, ctx));

    // L(f3, 1) = L1 + 4i L2 over the two members at 8 tau
    let combo = k2_combination_numeric(4, None, ctx)?;
    let l_f3 = lvalue_combination(&combo, 1, ctx)?;
    let l1 = l_f3.real().clone();
    let im = l_f3.imag().clone();

    // 4F3(-1) = 32/pi^2 L(f2,1) |Im L(f3,1)|
    let (rec, start) = record("classical:d4-deg4-value");
    let lhs = f_minus1(6, WhippleVariant::Length4, ctx)?;
    let pi2 = ctx.pi() * ctx.pi();
    let rhs = ctx.float(32) / pi2.clone() * l_f2_split.clone() * im.clone().abs();
    out.push(finish(rec, start, &lhs, &rhs, tol_exp, ctx));

    // 5F4(-1) = 2/(pi L(f2,1)) Re L(f3,1)
    let (rec, start) = record("classical:d4-deg5-value");
    let lhs = f_minus1(6, WhippleVariant::Length5, ctx)?;
    let rhs = ctx.float(2) / (ctx.pi() * l_f2_split.clone()) * l1.clone();
    out.push(finish(rec, start, &lhs, &rhs, tol_exp, ctx));

    // the two-series closed form of L(f3, 1)
    let (rec, start) = record("classical:d4-weight3-lvalue");
    let g12 = gamma_real(&rat(1, 2), ctx)?;
    let g14 = gamma_real(&rat(1, 4), ctx)?;
    let g34 = gamma_real(&rat(3, 4), ctx)?;
    let f_a = f32_unit_extrapolated(
        &HypergeometricDatum::new(
            vec![rat(1, 2), rat(1, 2), rat(1, 4)],
            vec![rat_int(1), rat_int(1), rat(3, 4)],
        )?,
        ctx,
    )?;
    let f_b = f32_unit_extrapolated(
        &HypergeometricDatum::new(
            vec![rat(1, 2), rat(1, 2), rat(3, 4)],
            vec![rat_int(1), rat_int(1), rat(5, 4)],
        )?,
        ctx,
    )?;
    let re = g12.clone() / ctx.float(8) * (g14.clone() / g34.clone()) * f_a;
    let imp = g12 / ctx.float(8) * ctx.float(4) * (g34 / g14) * f_b;
    let rhs_c = ctx.complex(re, imp);
    out.push(finish_complex(rec, start, &l_f3, &rhs_c, tol_exp, ctx));
    Ok(out)
}

/// Both well-poised reduction lines at one admissible parameter tuple.
pub fn whipple_numeric_check(r: &[Rat; 4], tol_exp: u32, ctx: &Ctx) -> Result<VerificationRecord> {
    let (rec, start) = record("classical:wp-reduction");
    let rec = rec.param("r", format!("{},{},{},{}", r[0], r[1], r[2], r[3]));
    let (r1, r2, r3, r4) = (&r[0], &r[1], &r[2], &r[3]);
    let star = |ri: &Rat| rat_int(1) + r1 - ri;
    let lhs_datum = HypergeometricDatum::new(
        vec![r1.clone(), r2.clone(), r3.clone(), r4.clone()],
        vec![rat_int(1), star(r2), star(r3), star(r4)],
    )?;
    let prefactor = gamma_real(&star(r3), ctx)? * gamma_real(&star(r4), ctx)?
        / (gamma_real(&(rat_int(1) + r1), ctx)? * gamma_real(&(star(r4) - r3), ctx)?);
    // line 1
    let lhs4 = f_at_minus_one(&lhs_datum, None, ctx)?;
    let target4 = HypergeometricDatum::new(
        vec![rat_int(1) + r1 / rat_int(2) - r2, r3.clone(), r4.clone()],
        vec![rat_int(1), rat_int(1) + r1 / rat_int(2), star(r2)],
    )?;
    let rhs4 = prefactor.clone() * f32_unit_extrapolated(&target4, ctx)?;
    // line 2 (the very-well-poised series through the telescoped factor)
    let c1 = rat_int(2) / r1;
    let lhs5 = f_at_minus_one(&lhs_datum, Some((&rat_int(1), &c1)), ctx)?;
    let target5 = HypergeometricDatum::new(
        vec![(rat_int(1) + r1) / rat_int(2) - r2, r3.clone(), r4.clone()],
        vec![rat_int(1), (rat_int(1) + r1) / rat_int(2), star(r2)],
    )?;
    let rhs5 = prefactor * f32_unit_extrapolated(&target5, ctx)?;
    let tol = ctx.tol(tol_exp);
    let ok = rel_agree(&lhs4, &rhs4, &tol) && rel_agree(&lhs5, &rhs5, &tol);
    let residual = rel_residual(&lhs4, &rhs4).max(rel_residual(&lhs5, &rhs5));
    let mut rec = rec
        .sides(
            format!("{} ; {}", show(&lhs4, 26), show(&lhs5, 26)),
            format!("{} ; {}", show(&rhs4, 26), show(&rhs5, 26)),
        )
        .modulus(format!("1e-{tol_exp}"))
        .error_bound(format!("{residual:.3e}"))
        .status(ok);
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(rec)
}

/// The unit-argument transformation 3F2(a,b,c;d,e;1) =
/// G(e) G(d+e-a-b-c) / (G(e-a) G(d+e-b-c)) 3F2(a,d-b,d-c;d,d+e-b-c;1).
pub fn kummer_numeric_check(params: &[Rat; 5], tol_exp: u32, ctx: &Ctx) -> Result<VerificationRecord> {
    let (rec, start) = record("classical:kummer-3f2");
    let (a, b, c, d, e) = (&params[0], &params[1], &params[2], &params[3], &params[4]);
    let rec = rec.param("params", format!("{a},{b},{c};{d},{e}"));
    let lhs_datum = HypergeometricDatum::new(
        vec![a.clone(), b.clone(), c.clone()],
        vec![rat_int(1), d.clone(), e.clone()],
    )?;
    let lhs = f32_unit_extrapolated(&lhs_datum, ctx)?;
    let s = d + e - a - b - c;
    let prefactor = gamma_real(e, ctx)? * gamma_real(&s, ctx)?
        / (gamma_real(&(e - a), ctx)? * gamma_real(&(d + e - b - c), ctx)?);
    let rhs_datum = HypergeometricDatum::new(
        vec![a.clone(), d - b, d - c],
        vec![rat_int(1), d.clone(), d + e - b - c],
    )?;
    let rhs = prefactor * f32_unit_extrapolated(&rhs_datum, ctx)?;
    Ok(finish(rec, start, &lhs, &rhs, tol_exp, ctx))
}

fn three_pow(ctx: &Ctx, e: &Rat) -> Float {
    (ctx.rat(e) * ctx.float(3).ln()).exp()
}

/// The full appendix battery; tolerance 1e-10 unless stated otherwise.
pub fn appendix_checks(ctx: &Ctx) -> Result<Vec<VerificationRecord>> {
    let tol_exp = 10u32;
    let mut out = Vec::new();
    let pi = ctx.pi();
    let pi2 = ctx.pi() * ctx.pi();

    let f32_at = |upper: [Rat; 3], lower: [Rat; 2]| -> Result<Float> {
        f32_unit_extrapolated(
            &HypergeometricDatum::new(
                vec![upper[0].clone(), upper[1].clone(), upper[2].clone()],
                vec![rat_int(1), lower[0].clone(), lower[1].clone()],
            )?,
            ctx,
        )
    };

    // ---- unit-value / L-value evaluations for the three small data ----
    let f_d2 = f32_at([rat(1, 2), rat(1, 2), rat(1, 2)], [rat_int(1), rat_int(1)])?;
    let eta4_6 = EtaQuotient::new(vec![(rat_int(4), 6)])?;
    {
        let (rec, start) = record("appendix:d2-lvalue-1");
        let rhs = ctx.float(8) / pi.clone() * lvalue_eta(&eta4_6, 16, 1, ctx)?;
        out.push(finish(rec, start, &f_d2, &rhs, tol_exp, ctx));
        let (rec, start) = record("appendix:d2-lvalue-2");
        let rhs = ctx.float(16) / pi2.clone() * lvalue_eta(&eta4_6, 16, 2, ctx)?;
        out.push(finish(rec, start, &f_d2, &rhs, tol_exp, ctx));
        let (rec, start) = record("appendix:d2-cubic-transform");
        let f_16 = f32_at([rat(1, 2), rat(1, 6), rat(5, 6)], [rat_int(1), rat_int(1)])?;
        let rhs = ctx.float(2) / ctx.float(3).sqrt() * f_16;
        out.push(finish(rec, start, &f_d2, &rhs, tol_exp, ctx));
    }
    {
        let f_d3 = f32_at([rat(1, 2), rat(1, 3), rat(2, 3)], [rat_int(1), rat_int(1)])?;
        let eta23 = EtaQuotient::new(vec![(rat_int(2), 3), (rat_int(6), 3)])?;
        let (rec, start) = record("appendix:d3-lvalue-1");
        let rhs = ctx.float(6) * ctx.float(3).sqrt() / pi.clone() * lvalue_eta(&eta23, 12, 1, ctx)?;
        out.push(finish(rec, start, &f_d3, &rhs, tol_exp, ctx));
        let (rec, start) = record("appendix:d3-lvalue-2");
        let rhs = ctx.float(18) / pi2.clone() * lvalue_eta(&eta23, 12, 2, ctx)?;
        out.push(finish(rec, start, &f_d3, &rhs, tol_exp, ctx));
    }
    {
        let f_d4 = f32_at([rat(1, 2), rat(1, 4), rat(3, 4)], [rat_int(1), rat_int(1)])?;
        let hd = HypergeometricDatum::new(
            vec![rat(1, 2), rat(1, 2), rat(1, 2)],
            vec![rat_int(1), rat_int(1), rat_int(1)],
        )?;
        let alt = f_at_minus_one(&hd, None, ctx)?;
        let (rec, start) = record("appendix:d4-quadratic-transform");
        let rhs = ctx.float(2).sqrt() * alt;
        out.push(finish(rec, start, &f_d4, &rhs, tol_exp, ctx));
        let f8 = EtaQuotient::new(vec![
            (rat_int(1), 2),
            (rat_int(2), 1),
            (rat_int(4), 1),
            (rat_int(8), 2),
        ])?;
        let (rec, start) = record("appendix:d4-lvalue-1");
        let rhs = ctx.float(12) * ctx.float(2).sqrt() / pi.clone() * lvalue_eta(&f8, 8, 1, ctx)?;
        out.push(finish(rec, start, &f_d4, &rhs, tol_exp, ctx));
        let (rec, start) = record("appendix:d4-lvalue-2");
        let rhs = ctx.float(24) / pi2.clone() * lvalue_eta(&f8, 8, 2, ctx)?;
        out.push(finish(rec, start, &f_d4, &rhs, tol_exp, ctx));
    }

    // ---- the four period relations ----
    {
        let p16 = p_value(&rat(1, 6), &rat(5, 6), ctx)?.value;
        let (rec, start) = record("appendix:period-closed-form");
        let b44 = beta(&rat(1, 4), &rat(1, 4), ctx)?;
        let rhs = ctx.two_pow(&rat(-5, 6)) * three_pow(ctx, &rat(-1, 4)) * b44.clone() * b44;
        let b42 = beta(&rat(1, 4), &rat(1, 2), ctx)?;
        let rhs2 = ctx.two_pow(&rat(1, 6)) * three_pow(ctx, &rat(-1, 4)) * b42.clone() * b42;
        let both = rel_agree(&p16, &rhs, &ctx.tol(tol_exp)) && rel_agree(&p16, &rhs2, &ctx.tol(tol_exp));
        let mut r = rec
            .sides(show(&p16, 30), show(&rhs, 30))
            .modulus(format!("1e-{tol_exp}"))
            .error_bound(format!("{:.3e}", rel_residual(&p16, &rhs)))
            .status(both);
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(r);

        let sqrt3 = ctx.float(3).sqrt();
        let p13 = p_value(&rat(1, 3), &rat(2, 3), ctx)?.value;
        let p23 = p_value(&rat(2, 3), &rat(4, 3), ctx)?.value;
        let (rec, start) = record("appendix:period-relation-1");
        let lhs = ctx.two_pow(&rat(1, 3)) * p13;
        let rhs = (ctx.float(2) + &sqrt3) * p23.clone();
        out.push(finish(rec, start, &lhs, &rhs, tol_exp, ctx));

        let p56 = p_value(&rat(5, 6), &rat(7, 6), ctx)?.value;
        let (rec, start) = record("appendix:period-relation-2");
        let lhs = ctx.two_pow(&rat(1, 3)) * p56;
        let ok = rel_agree(&lhs, &p16, &ctx.tol(tol_exp))
            && rel_agree(&p16, &((ctx.float(1) + &sqrt3) * p23.clone()), &ctx.tol(tol_exp));
        let mut r = rec
            .sides(show(&lhs, 30), show(&p16, 30))
            .modulus(format!("1e-{tol_exp}"))
            .error_bound(format!("{:.3e}", rel_residual(&lhs, &p16)))
            .status(ok);
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(r);

        let p1376 = p_value(&rat(1, 3), &rat(7, 6), ctx)?.value;
        let p2356 = p_value(&rat(2, 3), &rat(5, 6), ctx)?.value;
        let (rec, start) = record("appendix:period-relation-3");
        let lhs = ctx.two_pow(&rat(1, 3)) * p1376;
        let mid = (ctx.float(2) - &sqrt3) * p2356;
        let rhs = sqrt3.clone() * p23;
        let ok = rel_agree(&lhs, &mid, &ctx.tol(tol_exp)) && rel_agree(&lhs, &rhs, &ctx.tol(tol_exp));
        let mut r = rec
            .sides(show(&lhs, 30), show(&rhs, 30))
            .modulus(format!("1e-{tol_exp}"))
            .error_bound(format!("{:.3e}", rel_residual(&lhs, &rhs)))
            .status(ok);
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(r);
    }

    // ---- the two-parameter family of period splittings ----
    for m in [1i64, 2, 3] {
        let modulus = 12 / m;
        for j in 1..modulus {
            if num::integer::gcd(j, modulus) != 1 {
                continue;
            }
            let mj = m * j;
            for plus in [true, false] {
                let (rec, start) = record("appendix:period-splitting");
                let rec = rec.param("m", m).param("j", j).param("sign", if plus { "+" } else { "-" });
                let s_off = if plus { rat_int(1) } else { rat(1, 2) };
                let lhs = ctx.two_pow(&(rat_int(1) - rat(mj, 6)))
                    * p_value(&rat(mj, 12), &(s_off + rat(mj, 24)), ctx)?.value;
                let p_a = p_value(&rat(mj, 24), &(rat_int(1) - rat(mj, 24)), ctx)?.value;
                let p_b = p_value(
                    &(rat(1, 2) + rat(mj, 24)),
                    &(rat(3, 2) - rat(mj, 24)),
                    ctx,
                )?
                .value;
                let rhs = if plus { p_a - p_b } else { p_a + p_b };
                out.push(finish(rec, start, &lhs, &rhs, tol_exp, ctx));
            }
        }
    }

    // ---- weight-3 L-values against period combinations ----
    // D=4 (m=6): pi L = (P(1/4) + i P(3/4))/8
    {
        let (rec, start) = record("appendix:lvalue-row-d4");
        let combo = k2_combination_numeric(4, None, ctx)?;
        let lhs = lvalue_combination(&combo, 1, ctx)? * pi.clone();
        let p14 = p_value(&rat(1, 4), &rat(3, 4), ctx)?.value;
        let p34 = p_value(&rat(3, 4), &rat(5, 4), ctx)?.value;
        let rhs = ctx.complex(p14 / ctx.float(8), p34 / ctx.float(8));
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
    }
    // D=12 (m=2)
    {
        let (rec, start) = record("appendix:lvalue-row-d12");
        let combo = k2_combination_numeric(12, None, ctx)?;
        let lhs = lvalue_combination(&combo, 1, ctx)? * pi.clone();
        let p = |r: Rat, s: Rat| -> Result<Float> { Ok(p_value(&r, &s, ctx)?.value) };
        let a = ctx.complex(
            p(rat(1, 12), rat(11, 12))?,
            p(rat(7, 12), rat(17, 12))?,
        );
        let b = ctx.complex(
            p(rat(5, 12), rat(7, 12))?,
            p(rat(11, 12), rat(13, 12))?,
        );
        let c1 = ctx.float(12) * ctx.two_pow(&rat(1, 3));
        let c2 = ctx.float(6) * ctx.two_pow(&rat(2, 3));
        let rhs = a / c1 - b / c2;
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
    }
    // D=8 (m=3)
    {
        let (rec, start) = record("appendix:lvalue-row-d8");
        let combo = k2_combination_numeric(8, None, ctx)?;
        let lhs = lvalue_combination(&combo, 1, ctx)? * pi.clone();
        let p = |r: Rat, s: Rat| -> Result<Float> { Ok(p_value(&r, &s, ctx)?.value) };
        let a = ctx.complex(p(rat(1, 8), rat(7, 8))?, p(rat(5, 8), rat(11, 8))?);
        let b = ctx.complex(p(rat(3, 8), rat(5, 8))?, p(rat(7, 8), rat(9, 8))?);
        let rhs = a / (ctx.float(8) * ctx.float(2).sqrt()) + b / ctx.float(8);
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
    }
    // D in {3,6} (m in {4,8}): pi L(f_a,1) = B(1/4,1/4)^2 / (2^{5/2} 3^{5/4}),
    // and the partner with the sqrt(3) ratio
    {
        let (rec, start) = record("appendix:lvalue-row-d3");
        let combo = k2_combination_numeric(3, None, ctx)?;
        let l_a = lvalue_combination(&combo, 1, ctx)?;
        let lhs = l_a.real().clone() * pi.clone();
        let b44 = beta(&rat(1, 4), &rat(1, 4), ctx)?;
        let rhs = b44.clone() * b44 / (ctx.two_pow(&rat(5, 2)) * three_pow(ctx, &rat(5, 4)));
        let im_small = l_a.imag().clone().abs() < ctx.tol(tol_exp);
        let mut r = finish(rec, start, &lhs, &rhs, tol_exp, ctx);
        if !im_small {
            r.status = crate::report::Status::Fail;
        }
        out.push(r);

        // f_b = member1 + 2 member2 (the conductor-3 twist partner):
        // pi L(f_b, 1) = sqrt(3) B(1/4,1/4)^2/(2^{5/2} 3^{5/4})
        let (rec, start) = record("appendix:lvalue-row-d3-twist");
        let combo_b = k2_combination_numeric(3, Some("-3"), ctx)?;
        let l_b = lvalue_combination(&combo_b, 1, ctx)?;
        let lhs_b = l_b.real().clone() * pi.clone();
        let rhs_b = ctx.float(3).sqrt() * rhs;
        out.push(finish(rec, start, &lhs_b, &rhs_b, tol_exp, ctx));
    }

    // ---- functional-equation rows: L(f,2) against twisted L(.,1) ----
    {
        // D=4: L(f,2) = (1+i)/4 pi L(f x chi_{-1}, 1)
        let (rec, start) = record("appendix:lvalue2-row-d4");
        let combo = k2_combination_numeric(4, None, ctx)?;
        let lhs = lvalue_combination(&combo, 2, ctx)?;
        let twisted = k2_combination_numeric(4, Some("-1"), ctx)?;
        let lt = lvalue_combination(&twisted, 1, ctx)?;
        let rhs = ctx.complex(ctx.float(1), ctx.float(1)) / ctx.float(4) * pi.clone() * lt;
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
    }
    {
        // D=12: L(f,2) = -(1+i)/12 pi L(f x chi_{-1},1) = (1-i)/(12 sqrt3) pi L(f x chi_3,1)
        let combo = k2_combination_numeric(12, None, ctx)?;
        let lhs = lvalue_combination(&combo, 2, ctx)?;
        let (rec, start) = record("appendix:lvalue2-row-d12");
        let lt = lvalue_combination(&k2_combination_numeric(12, Some("-1"), ctx)?, 1, ctx)?;
        let rhs = -ctx.complex(ctx.float(1), ctx.float(1)) / ctx.float(12) * pi.clone() * lt;
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
        // the twisted partner enters with the opposite imaginary-unit
        // choice; both displays fix their embeddings independently
        let (rec, start) = record("appendix:lvalue2-row-d12-second");
        let rec = rec.param("embedding", "conjugate");
        let lc = lvalue_combination(&k2_combination_embedded(12, Some("3"), true, ctx)?, 1, ctx)?;
        let rhs2 = ctx.complex(ctx.float(1), ctx.float(-1)) / (ctx.float(12) * ctx.float(3).sqrt())
            * pi.clone()
            * lc;
        out.push(finish_complex(rec, start, &lhs, &rhs2, tol_exp, ctx));
    }
    {
        // D=8: L(f,2) = (1+i)/8 pi L(f x chi_{-2},1) = (i-1)(1+sqrt2)/8 pi L(f x chi_{-1},1)
        let combo = k2_combination_numeric(8, None, ctx)?;
        let lhs = lvalue_combination(&combo, 2, ctx)?;
        let (rec, start) = record("appendix:lvalue2-row-d8");
        let lt = lvalue_combination(&k2_combination_numeric(8, Some("-2"), ctx)?, 1, ctx)?;
        let rhs = ctx.complex(ctx.float(1), ctx.float(1)) / ctx.float(8) * pi.clone() * lt;
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
        let (rec, start) = record("appendix:lvalue2-row-d8-second");
        let lt2 = lvalue_combination(&k2_combination_numeric(8, Some("-1"), ctx)?, 1, ctx)?;
        let rhs2 = ctx.complex(ctx.float(-1), ctx.float(1)) * (ctx.float(1) + ctx.float(2).sqrt())
            / ctx.float(8)
            * pi.clone()
            * lt2;
        out.push(finish_complex(rec, start, &lhs, &rhs2, tol_exp, ctx));
    }
    {
        // D in {3,6}: L(f,2) = pi/3 L(f,1)
        let (rec, start) = record("appendix:lvalue2-row-d3");
        let combo = k2_combination_numeric(3, None, ctx)?;
        let lhs = lvalue_combination(&combo, 2, ctx)?;
        let rhs = lvalue_combination(&combo, 1, ctx)? * pi.clone() / ctx.float(3);
        out.push(finish_complex(rec, start, &lhs, &rhs, tol_exp, ctx));
    }

    // D=24 row: recorded, not asserted (the algebraic normalizations of
    // the non-rational coefficients are convention-sensitive)
    {
        let (rec, start) = record("appendix:lvalue-row-d24-informational");
        let combo = k2_combination_numeric(24, None, ctx)?;
        let lhs = lvalue_combination(&combo, 1, ctx)? * pi.clone();
        let mut r = rec
            .sides(show_complex(&lhs, 30), "recorded only")
            .modulus("none")
            .skipped("sign/normalization convention of the irrational coefficients unconfirmed");
        r.elapsed_ms = start.elapsed().as_millis() as u64;
        out.push(r);
    }

    Ok(out)
}

/// Seeded admissible parameter tuples for the well-poised checks.
pub fn seeded_whipple_tuples(seed: u64, count: usize) -> Vec<[Rat; 4]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed ^ 0x7769_7070);
    let mut out = Vec::new();
    while out.len() < count {
        let mut tuple = Vec::new();
        for _ in 0..4 {
            let den = rng.gen_range(5..=24i64);
            let num = rng.gen_range(1..den);
            tuple.push(rat(num, den));
        }
        let sum: Rat = tuple.iter().fold(Rat::from(num::BigInt::from(0)), |a, b| a + b);
        // decay exponents for both lines and the target series
        let theta_l4 = rat_int(4) + &tuple[0] * rat_int(4) - &sum * rat_int(2);
        let theta_rhs = rat_int(1) + &tuple[0] - &tuple[2] - &tuple[3];
        use num::Signed;
        let margin = rat(2, 5);
        if (&theta_l4 - rat_int(1) - &margin).is_positive() && (&theta_rhs - &margin).is_positive() {
            // avoid degenerate upper entries in the reduced series
            let u1 = rat_int(1) + &tuple[0] / rat_int(2) - &tuple[1];
            let u2 = (rat_int(1) + &tuple[0]) / rat_int(2) - &tuple[1];
            if !crate::datum::is_integer(&u1) && !crate::datum::is_integer(&u2) {
                out.push([tuple[0].clone(), tuple[1].clone(), tuple[2].clone(), tuple[3].clone()]);
            }
        }
    }
    out
}

/// Seeded admissible parameter tuples for the unit-argument transform.
pub fn seeded_kummer_tuples(seed: u64, count: usize) -> Vec<[Rat; 5]> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(seed ^ 0x6b75_6d6d);
    let mut out = Vec::new();
    while out.len() < count {
        let mut v = Vec::new();
        for _ in 0..5 {
            let den = rng.gen_range(4..=16i64);
            let num = rng.gen_range(1..=den + 4);
            v.push(rat(num, den));
        }
        let (a, b, c, d, e) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
        let theta = d + e - a - b - c;
        let theta2 = e - a;
        use num::Signed;
        let margin = rat(2, 5);
        let ok = (&theta - &margin).is_positive()
            && (&theta2 - &margin).is_positive()
            && !crate::datum::is_integer(&(d - b))
            && !crate::datum::is_integer(&(d - c))
            && !crate::datum::is_integer(&theta)
            && (d + e - b - c).is_positive();
        if ok {
            out.push([v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone(), v[4].clone()]);
        }
    }
    out
}
