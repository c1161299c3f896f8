//! Exact-rational model of hypergeometric data and the parameter families
//! built from them: length-3/4/5 data, the weight-3 orbit pairs, their
//! Galois orbits, and the symbolic Whipple reduction.
//!
//! Data are ordered lists, not multisets: column i of the upper row pairs
//! with column i of the lower row in the period normalization, so order is
//! semantic. Multiset comparison helpers are provided separately.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Exact rational scalar. Always stored in lowest terms with positive
/// denominator (enforced by the representation).
pub type Rat = BigRational;

/// Shorthand constructor for small rationals.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from(BigInt::from(n))
}

pub fn is_integer(x: &Rat) -> bool {
    x.denom().is_one()
}

/// Fractional part in [0,1).
pub fn fract(x: &Rat) -> Rat {
    x - x.floor()
}

/// Denominator of x in lowest terms, as u64.
pub fn denom_u64(x: &Rat) -> u64 {
    use num::ToPrimitive;
    x.denom().to_u64().expect("denominator exceeds u64")
}

pub fn to_i64(x: &BigInt) -> i64 {
    use num::ToPrimitive;
    x.to_i64().expect("integer exceeds i64")
}

fn gcd64(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd64(b, a % b) }
}

fn lcm64(a: u64, b: u64) -> u64 {
    a / gcd64(a, b) * b
}

/// Least common denominator of a list of rationals.
pub fn lcd<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> u64 {
    xs.into_iter().fold(1u64, |m, x| lcm64(m, denom_u64(x)))
}

/// Parse "a/b" or "a" into a rational.
pub fn parse_rat(s: &str) -> std::result::Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational".into());
    }
    match s.split_once('/') {
        None => s
            .parse::<BigInt>()
            .map(Rat::from)
            .map_err(|e| format!("bad integer `{s}`: {e}")),
        Some((n, d)) => {
            let n = n.trim().parse::<BigInt>().map_err(|e| format!("bad numerator `{n}`: {e}"))?;
            let d = d.trim().parse::<BigInt>().map_err(|e| format!("bad denominator `{d}`: {e}"))?;
            if d.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(Rat::new(n, d))
        }
    }
}

/// An ordered pair of equal-length parameter lists (upper; lower).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeometricDatum {
    alpha: Vec<Rat>,
    beta: Vec<Rat>,
}

impl HypergeometricDatum {
    pub fn new(alpha: Vec<Rat>, beta: Vec<Rat>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::Parameter(format!(
                "upper and lower rows must have equal length, got {} and {}",
                alpha.len(),
                beta.len()
            )));
        }
        if alpha.is_empty() {
            return Err(Error::Parameter("datum must be nonempty".into()));
        }
        if alpha.len() > 8 {
            return Err(Error::Parameter("data of length > 8 are unsupported".into()));
        }
        Ok(HypergeometricDatum { alpha, beta })
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn alpha(&self) -> &[Rat] {
        &self.alpha
    }

    pub fn beta(&self) -> &[Rat] {
        &self.beta
    }

    /// True when the lower row starts with 1 (the classical convention).
    pub fn q1_is_one(&self) -> bool {
        self.beta[0].is_one()
    }

    /// Multiset equality of both rows, ignoring column order.
    pub fn multiset_eq(&self, other: &Self) -> bool {
        fn sorted(v: &[Rat]) -> Vec<Rat> {
            let mut v = v.to_vec();
            v.sort();
            v
        }
        sorted(&self.alpha) == sorted(&other.alpha) && sorted(&self.beta) == sorted(&other.beta)
    }

    pub fn invariants(&self) -> DatumInvariants {
        datum_invariants(self)
    }

    /// Render in the grammar accepted by [`parse_datum`], without the
    /// evaluation point.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let row = |s: &mut String, xs: &[Rat]| {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{}", x);
            }
        };
        row(&mut s, &self.alpha);
        s.push(';');
        row(&mut s, &self.beta);
        s
    }
}

/// Derived invariants of a datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatumInvariants {
    /// Least common denominator of all parameters.
    pub m: u64,
    /// No upper-minus-lower difference is an integer.
    pub primitive: bool,
    /// r_i + q_i constant across columns.
    pub well_poised: bool,
    /// Well-poised and some column equals (1 + r_1/2, r_1/2).
    pub very_well_poised: bool,
    /// Both cyclotomic products of the rows have integer coefficients.
    pub defined_over_q: bool,
}

/// True when the multiset of fractional parts is Galois-stable, i.e. the
/// product of (x - e^{2 pi i x_j}) has integer coefficients: for every
/// reduced denominator d present, all phi(d) primitive numerators occur
/// with one common multiplicity.
fn galois_stable(xs: &[Rat]) -> bool {
    let mut by_denom: BTreeMap<u64, BTreeMap<u64, usize>> = BTreeMap::new();
    for x in xs {
        let f = fract(x);
        let d = denom_u64(&f);
        let n = if f.is_zero() { 0 } else { to_i64(f.numer()) as u64 };
        *by_denom.entry(d).or_default().entry(n).or_default() += 1;
    }
    for (d, counts) in by_denom {
        let units: Vec<u64> = (0..d.max(1)).filter(|a| gcd64(*a, d) == 1).collect();
        if d == 1 {
            continue; // x - 1 always has integer coefficients
        }
        let mult = counts.values().copied().next().unwrap_or(0);
        if units.len() != counts.len() {
            return false;
        }
        for u in units {
            if counts.get(&u).copied() != Some(mult) {
                return false;
            }
        }
    }
    true
}

pub fn datum_invariants(hd: &HypergeometricDatum) -> DatumInvariants {
    let m = lcd(hd.alpha.iter().chain(hd.beta.iter()));
    let primitive = hd
        .alpha
        .iter()
        .all(|r| hd.beta.iter().all(|q| !is_integer(&(r - q))));
    let s0 = &hd.alpha[0] + &hd.beta[0];
    let well_poised = hd
        .alpha
        .iter()
        .zip(hd.beta.iter())
        .all(|(r, q)| r + q == s0);
    let r1 = &hd.alpha[0];
    let half_r1 = r1 / rat_int(2);
    let very_well_poised = well_poised
        && hd
            .alpha
            .iter()
            .zip(hd.beta.iter())
            .any(|(r, q)| *r == rat_int(1) + &half_r1 && *q == half_r1);
    let defined_over_q = galois_stable(&hd.alpha) && galois_stable(&hd.beta);
    DatumInvariants {
        m,
        primitive,
        well_poised,
        very_well_poised,
        defined_over_q,
    }
}

fn check_j(j: i64) -> Result<()> {
    if (1..=11).contains(&j) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("j must lie in [1,11], got {j}")))
    }
}

/// The length-4 well-poised family: {j/12, j/12, 1/2, 1/2; 1, 1, 1/2+j/12, 1/2+j/12}.
pub fn make_hd4(j: i64) -> Result<HypergeometricDatum> {
    check_j(j)?;
    let r = rat(j, 12);
    let h = rat(1, 2);
    HypergeometricDatum::new(
        vec![r.clone(), r.clone(), h.clone(), h.clone()],
        vec![rat_int(1), rat_int(1), &h + &r, &h + &r],
    )
}

/// The very-well-poised length-5 extension: a second column (1+j/24-shifted)
/// inserted into the length-4 datum.
pub fn make_hd5(j: i64) -> Result<HypergeometricDatum> {
    check_j(j)?;
    let r = rat(j, 12);
    let h = rat(1, 2);
    let r2 = rat_int(1) + rat(j, 24);
    let q2 = rat(j, 24);
    HypergeometricDatum::new(
        vec![r.clone(), r2, r.clone(), h.clone(), h.clone()],
        vec![rat_int(1), q2, rat_int(1), &h + &r, &h + &r],
    )
}

/// The length-3 datum {1/2, 1/2, s-r; 1, 1, s}.
pub fn make_hd3(r: &Rat, s: &Rat) -> Result<HypergeometricDatum> {
    let d = s - r;
    if d <= Rat::zero() {
        return Err(Error::Parameter(format!("require s - r > 0, got {}", d)));
    }
    let h = rat(1, 2);
    HypergeometricDatum::new(
        vec![h.clone(), h, d],
        vec![rat_int(1), rat_int(1), s.clone()],
    )
}

/// The datum of the two Q-defined degree-4 cases with parameters
/// {1/6, 1/6, 5/6, 5/6; 1/3, 1/3, 2/3, 2/3}.
pub fn make_hd1() -> HypergeometricDatum {
    HypergeometricDatum::new(
        vec![rat(1, 6), rat(1, 6), rat(5, 6), rat(5, 6)],
        vec![rat(1, 3), rat(1, 3), rat(2, 3), rat(2, 3)],
    )
    .expect("static datum")
}

/// One member of the weight-3 parameter family (j/24, (24-j)/24) with its
/// derived constants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G2Pair {
    pub r: Rat,
    pub s: Rat,
    pub j: i64,
    /// D = 24/gcd(j,24)
    pub d: u64,
    /// M = lcm(4, D)
    pub m: u64,
    /// N(r) = 48/gcd(24r, 24)
    pub n: u64,
}

/// N(r) = 48/gcd(24r, 24) for 24r integral.
pub fn n_of(r: &Rat) -> Result<u64> {
    let t = r * rat_int(24);
    if !is_integer(&t) || r.is_negative() {
        return Err(Error::Parameter(format!("N(r) needs r >= 0 with 24r integral, got {r}")));
    }
    let n24 = to_i64(t.numer()).unsigned_abs();
    Ok(48 / gcd64(n24, 24))
}

pub fn g2_pair(j: i64) -> Result<G2Pair> {
    check_j(j)?;
    let d = 24 / gcd64(j as u64, 24);
    let m = lcm64(4, d);
    let r = rat(j, 24);
    let s = rat(24 - j, 24);
    let n = n_of(&r)?;
    Ok(G2Pair { r, s, j, d, m, n })
}

/// Membership in the weight-3 admissible parameter set: 0 < r < s < 3/2,
/// r != 1, s != 1/2, 24s integral, 8(r+s) integral.
pub fn in_s2(r: &Rat, s: &Rat) -> bool {
    r.is_positive()
        && r < s
        && *s < rat(3, 2)
        && !r.is_one()
        && *s != rat(1, 2)
        && is_integer(&(s * rat_int(24)))
        && is_integer(&((r + s) * rat_int(8)))
}

/// Membership in the weight-2 admissible set: as for the weight-3 set but
/// with s - r > 1/2 instead of the two exclusions.
pub fn in_s1(r: &Rat, s: &Rat) -> bool {
    r.is_positive()
        && r < s
        && *s < rat(3, 2)
        && (s - r) > rat(1, 2)
        && is_integer(&(s * rat_int(24)))
        && is_integer(&((r + s) * rat_int(8)))
}

/// The Galois orbit O(D) = {(i/D, (D-i)/D + floor(2i/D)) : i in (Z/D)^x}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisOrbit {
    pub d: u64,
    pub members: Vec<(Rat, Rat)>,
}

pub const ORBIT_DENOMS: [u64; 6] = [3, 4, 6, 8, 12, 24];

pub fn galois_orbit(d: u64) -> Result<GaloisOrbit> {
    if !ORBIT_DENOMS.contains(&d) {
        return Err(Error::Parameter(format!("unsupported orbit denominator {d}")));
    }
    let mut members = Vec::new();
    for i in 1..d {
        if gcd64(i, d) != 1 {
            continue;
        }
        let r = rat(i as i64, d as i64);
        let s = rat((d - i) as i64, d as i64) + rat_int((2 * i / d) as i64);
        members.push((r, s));
    }
    Ok(GaloisOrbit { d, members })
}

/// A product of Gamma factors with integer exponents times a rational
/// scalar. Evaluation backends interpret the same object over C, mod p^k,
/// or as Gauss sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaQuotient {
    pub scalar: Rat,
    /// (argument, exponent) pairs.
    pub factors: Vec<(Rat, i32)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WhippleVariant {
    Length4,
    Length5,
}

/// Reduce the length-4 (resp. length-5) family member at -1 to its
/// associated 3F2(1) datum, returning the symbolic prefactor
/// C(r) = (1/r) Gamma(r+1/2)^2 / Gamma(r)^2 with r = j/12.
pub fn whipple_reduce(j: i64, variant: WhippleVariant) -> Result<(GammaQuotient, HypergeometricDatum)> {
    check_j(j)?;
    let r = rat(j, 12);
    let half = rat(1, 2);
    let prefactor = GammaQuotient {
        scalar: rat_int(1) / &r,
        factors: vec![(&r + &half, 2), (r.clone(), -2)],
    };
    let two = rat_int(2);
    let datum = match variant {
        WhippleVariant::Length4 => HypergeometricDatum::new(
            vec![rat_int(1) - &r / &two, half.clone(), half.clone()],
            vec![rat_int(1), rat_int(1) + &r / &two, rat_int(1)],
        )?,
        WhippleVariant::Length5 => HypergeometricDatum::new(
            vec![(rat_int(1) - &r) / &two, half.clone(), half.clone()],
            vec![rat_int(1), (rat_int(1) + &r) / &two, rat_int(1)],
        )?,
    };
    Ok((prefactor, datum))
}

/// Parse "r1,r2,...;q1,q2,...@lambda". Token positions count rationals
/// left to right starting from 1, with the evaluation point last.
pub fn parse_datum(text: &str) -> Result<(HypergeometricDatum, Rat)> {
    let (body, lambda_str) = text.rsplit_once('@').ok_or(Error::Parse {
        pos: 0,
        msg: "missing `@lambda` suffix".into(),
    })?;
    let (upper, lower) = body.split_once(';').ok_or(Error::Parse {
        pos: 0,
        msg: "missing `;` separating rows".into(),
    })?;
    let mut pos = 0usize;
    let mut parse_row = |row: &str| -> Result<Vec<Rat>> {
        row.split(',')
            .map(|tok| {
                pos += 1;
                parse_rat(tok).map_err(|msg| Error::Parse { pos, msg })
            })
            .collect()
    };
    let alpha = parse_row(upper)?;
    let beta = parse_row(lower)?;
    pos += 1;
    let lambda = parse_rat(lambda_str).map_err(|msg| Error::Parse { pos, msg })?;
    Ok((HypergeometricDatum::new(alpha, beta)?, lambda))
}

/// Render a datum together with its evaluation point in the grammar
/// accepted by [`parse_datum`].
pub fn render_datum(hd: &HypergeometricDatum, lambda: &Rat) -> String {
    format!("{}@{}", hd.render(), lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hd4_family() {
        let hd = make_hd4(6).unwrap();
        let h = rat(1, 2);
        assert_eq!(hd.alpha(), &[h.clone(), h.clone(), h.clone(), h.clone()]);
        assert_eq!(hd.beta(), &[rat_int(1), rat_int(1), rat_int(1), rat_int(1)]);
        let inv = hd.invariants();
        assert_eq!(inv.m, 2);
        assert!(inv.primitive && inv.well_poised && !inv.very_well_poised);

        let hd1 = make_hd4(1).unwrap();
        assert_eq!(hd1.alpha(), &[rat(1, 12), rat(1, 12), rat(1, 2), rat(1, 2)]);
        assert_eq!(hd1.beta(), &[rat_int(1), rat_int(1), rat(7, 12), rat(7, 12)]);

        assert!(make_hd4(12).is_err());
        assert!(make_hd4(0).is_err());
    }

    #[test]
    fn hd4_well_poised_row_sum() {
        for j in 1..=11 {
            let hd = make_hd4(j).unwrap();
            let inv = hd.invariants();
            assert!(inv.well_poised && inv.primitive, "j={j}");
            let expect = rat_int(1) + rat(j, 12);
            for (r, q) in hd.alpha().iter().zip(hd.beta()) {
                assert_eq!(r + q, expect);
            }
        }
    }

    #[test]
    fn hd5_family() {
        let hd = make_hd5(6).unwrap();
        assert_eq!(
            hd.alpha(),
            &[rat(1, 2), rat(5, 4), rat(1, 2), rat(1, 2), rat(1, 2)]
        );
        assert_eq!(
            hd.beta(),
            &[rat_int(1), rat(1, 4), rat_int(1), rat_int(1), rat_int(1)]
        );
        for j in 1..=11 {
            let inv = make_hd5(j).unwrap().invariants();
            assert!(inv.very_well_poised, "j={j}");
            assert!(!inv.primitive, "j={j}");
        }
        let hd1 = make_hd5(1).unwrap();
        assert_eq!(hd1.alpha()[1], rat(25, 24));
        assert_eq!(hd1.beta()[1], rat(1, 24));
    }

    #[test]
    fn hd3_family() {
        assert!(make_hd3(&rat(1, 6), &rat(1, 12)).is_err());
        let hd = make_hd3(&rat(1, 6), &rat(1, 4)).unwrap();
        assert_eq!(hd.alpha(), &[rat(1, 2), rat(1, 2), rat(1, 12)]);
        assert_eq!(hd.beta(), &[rat_int(1), rat_int(1), rat(1, 4)]);
        let hd = make_hd3(&rat(1, 2), &rat_int(1)).unwrap();
        assert_eq!(hd.alpha(), &[rat(1, 2), rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn defined_over_q_cases() {
        assert!(make_hd1().invariants().defined_over_q);
        assert!(make_hd4(6).unwrap().invariants().defined_over_q);
        // j=1 involves primitive 12th roots 1/12 only partially: not stable
        assert!(!make_hd4(1).unwrap().invariants().defined_over_q);
    }

    #[test]
    fn g2_table_rows() {
        // j -> (D, M) fixture rows
        for (j, d, m) in [
            (1, 24, 24),
            (5, 24, 24),
            (7, 24, 24),
            (11, 24, 24),
            (2, 12, 12),
            (10, 12, 12),
            (3, 8, 8),
            (9, 8, 8),
            (4, 6, 12),
            (6, 4, 4),
            (8, 3, 12),
        ] {
            let g = g2_pair(j).unwrap();
            assert_eq!((g.d, g.m), (d, m), "j={j}");
            assert_eq!(g.n, 2 * g.d);
            assert!(in_s2(&g.r, &g.s));
        }
        // M(HD4(j/12)) divides M of the pair
        for j in 1..=11 {
            let m_hd = make_hd4(j).unwrap().invariants().m;
            let g = g2_pair(j).unwrap();
            assert_eq!(g.m % m_hd, 0, "j={j}");
        }
    }

    #[test]
    fn orbits() {
        let o = galois_orbit(4).unwrap();
        assert_eq!(o.members, vec![(rat(1, 4), rat(3, 4)), (rat(3, 4), rat(5, 4))]);
        let o = galois_orbit(3).unwrap();
        assert_eq!(o.members, vec![(rat(1, 3), rat(2, 3)), (rat(2, 3), rat(4, 3))]);
        let o = galois_orbit(24).unwrap();
        assert_eq!(o.members.len(), 8);
        let rs: Vec<Rat> = o.members.iter().map(|(r, _)| r.clone()).collect();
        let expect: Vec<Rat> = [1, 5, 7, 11, 13, 17, 19, 23].iter().map(|i| rat(*i, 24)).collect();
        assert_eq!(rs, expect);
        assert!(galois_orbit(5).is_err());
        // all members admissible
        for d in ORBIT_DENOMS {
            for (r, s) in galois_orbit(d).unwrap().members {
                assert!(in_s2(&r, &s), "({r},{s})");
            }
        }
    }

    #[test]
    fn orbit_conjugation_stability() {
        // i -> c*i mod D permutes the members for every unit c
        for d in ORBIT_DENOMS {
            let o = galois_orbit(d).unwrap();
            for c in 1..d {
                if gcd64(c, d) != 1 {
                    continue;
                }
                for (r, _) in &o.members {
                    let i = to_i64(fract(r).numer()).unsigned_abs() * (d / denom_u64(r));
                    let ci = (c * i) % d;
                    let image = rat(ci as i64, d as i64);
                    assert!(
                        o.members.iter().any(|(rm, _)| *rm == image),
                        "D={d} c={c} i={i}"
                    );
                }
            }
        }
    }

    #[test]
    fn whipple_targets() {
        let (c, hd) = whipple_reduce(6, WhippleVariant::Length4).unwrap();
        assert_eq!(hd.alpha(), &[rat(3, 4), rat(1, 2), rat(1, 2)]);
        assert_eq!(hd.beta(), &[rat_int(1), rat(5, 4), rat_int(1)]);
        assert_eq!(c.scalar, rat_int(2));
        assert_eq!(c.factors, vec![(rat_int(1), 2), (rat(1, 2), -2)]);

        let (_, hd5) = whipple_reduce(6, WhippleVariant::Length5).unwrap();
        assert_eq!(hd5.alpha(), &[rat(1, 4), rat(1, 2), rat(1, 2)]);
        assert_eq!(hd5.beta(), &[rat_int(1), rat(3, 4), rat_int(1)]);
    }

    #[test]
    fn parse_and_render() {
        let (hd, lam) = parse_datum("1/2,1/2,1/2,1/2;1,1,1,1@-1").unwrap();
        assert_eq!(hd, make_hd4(6).unwrap());
        assert_eq!(lam, rat_int(-1));

        let (hd, lam) = parse_datum("1/2;1@0").unwrap();
        assert_eq!(hd.len(), 1);
        assert!(lam.is_zero());

        match parse_datum("1/2,;1@1") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error at token 2, got {other:?}"),
        }

        // round trip on a fixture grid
        for j in 1..=11 {
            for hd in [make_hd4(j).unwrap(), make_hd5(j).unwrap()] {
                let text = render_datum(&hd, &rat_int(-1));
                let (back, lam) = parse_datum(&text).unwrap();
                assert_eq!(back, hd);
                assert_eq!(lam, rat_int(-1));
            }
        }
    }
}
