//! Parsed fixture tables: the family constants per column index, and the
//! weight-2/weight-3 eta combinations whose leading members carry the
//! coefficients that the extraction paths read.

use crate::datum::{parse_rat, Rat};
use crate::error::{Error, Result};
use once_cell::sync::Lazy;
use std::collections::BTreeMap;

const FIXTURE_TEXT: &str = include_str!("../../data/fixtures.kv");

#[derive(Debug, Clone)]
pub struct Table1Row {
    pub j: i64,
    pub d: u64,
    pub m: u64,
}

#[derive(Debug, Clone)]
pub struct Member {
    pub r: Rat,
    pub s: Rat,
    /// Coefficient descriptor string; "1" on the leading member.
    pub coeff: String,
}

#[derive(Debug, Clone)]
pub struct OrbitCombination {
    pub d: u64,
    pub scale_n: u64,
    pub label: String,
    pub members: Vec<Member>,
}

#[derive(Debug, Clone)]
pub struct NonOrbitPair {
    pub name: String,
    pub r1: Rat,
    pub s1: Rat,
    pub r2: Rat,
    pub s2: Rat,
    pub scale: u64,
    pub c: i64,
    pub label_plus: String,
    pub label_minus: String,
}

#[derive(Debug, Clone)]
pub struct Fixtures {
    pub version: u32,
    pub table1: Vec<Table1Row>,
    pub k2: BTreeMap<u64, OrbitCombination>,
    pub k1: BTreeMap<u64, OrbitCombination>,
    pub pairs: Vec<NonOrbitPair>,
}

impl Fixtures {
    pub fn table1_row(&self, j: i64) -> Result<&Table1Row> {
        self.table1
            .iter()
            .find(|row| row.j == j)
            .ok_or_else(|| Error::Parameter(format!("no fixture row for j={j}")))
    }

    pub fn k2_combination(&self, d: u64) -> Result<&OrbitCombination> {
        self.k2
            .get(&d)
            .ok_or_else(|| Error::Parameter(format!("no weight-3 combination for D={d}")))
    }

    pub fn k1_combination(&self, d: u64) -> Result<&OrbitCombination> {
        self.k1
            .get(&d)
            .ok_or_else(|| Error::Parameter(format!("no weight-2 combination for D={d}")))
    }
}

fn parse_kv(line: &str) -> Result<BTreeMap<&str, &str>> {
    let mut map = BTreeMap::new();
    for tok in line.split_whitespace() {
        let (k, v) = tok.split_once('=').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: format!("expected key=value, got `{tok}`"),
        })?;
        map.insert(k, v);
    }
    Ok(map)
}

fn parse_fixtures(text: &str) -> Result<Fixtures> {
    let mut fx = Fixtures {
        version: 0,
        table1: Vec::new(),
        k2: BTreeMap::new(),
        k1: BTreeMap::new(),
        pairs: Vec::new(),
    };
    let get = |kv: &BTreeMap<&str, &str>, k: &str| -> Result<String> {
        kv.get(k)
            .map(|s| s.to_string())
            .ok_or_else(|| Error::Parse { pos: 0, msg: format!("missing key `{k}`") })
    };
    let rp = |s: String| parse_rat(&s).map_err(|msg| Error::Parse { pos: 0, msg });
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (record, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        match record {
            "version" => fx.version = rest.trim().parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad version `{rest}`"),
            })?,
            "table1" => {
                let kv = parse_kv(rest)?;
                fx.table1.push(Table1Row {
                    j: get(&kv, "j")?.parse().unwrap(),
                    d: get(&kv, "D")?.parse().unwrap(),
                    m: get(&kv, "M")?.parse().unwrap(),
                });
            }
            "k2" | "k1" => {
                let kv = parse_kv(rest)?;
                let d: u64 = get(&kv, "D")?.parse().unwrap();
                let combo = OrbitCombination {
                    d,
                    scale_n: get(&kv, "N")?.parse().unwrap(),
                    label: get(&kv, "label")?,
                    members: Vec::new(),
                };
                if record == "k2" {
                    fx.k2.insert(d, combo);
                } else {
                    fx.k1.insert(d, combo);
                }
            }
            "k2member" | "k1member" => {
                let kv = parse_kv(rest)?;
                let d: u64 = get(&kv, "D")?.parse().unwrap();
                let member = Member {
                    r: rp(get(&kv, "r")?)?,
                    s: rp(get(&kv, "s")?)?,
                    coeff: get(&kv, "coeff")?,
                };
                let table = if record == "k2member" { &mut fx.k2 } else { &mut fx.k1 };
                table
                    .get_mut(&d)
                    .ok_or_else(|| Error::Parse {
                        pos: 0,
                        msg: format!("member for unknown combination D={d}"),
                    })?
                    .members
                    .push(member);
            }
            "pair" => {
                let kv = parse_kv(rest)?;
                fx.pairs.push(NonOrbitPair {
                    name: get(&kv, "name")?,
                    r1: rp(get(&kv, "r1")?)?,
                    s1: rp(get(&kv, "s1")?)?,
                    r2: rp(get(&kv, "r2")?)?,
                    s2: rp(get(&kv, "s2")?)?,
                    scale: get(&kv, "scale")?.parse().unwrap(),
                    c: get(&kv, "c")?.parse().unwrap(),
                    label_plus: get(&kv, "labelplus")?,
                    label_minus: get(&kv, "labelminus")?,
                });
            }
            other => {
                return Err(Error::Parse { pos: 0, msg: format!("unknown record `{other}`") });
            }
        }
    }
    if fx.version != 1 {
        return Err(Error::Parse { pos: 0, msg: format!("unsupported fixture version {}", fx.version) });
    }
    Ok(fx)
}

/// The parsed fixture tables shipped with the crate.
pub fn fixtures() -> &'static Fixtures {
    static FX: Lazy<Fixtures> = Lazy::new(|| parse_fixtures(FIXTURE_TEXT).expect("fixture file parses"));
    &FX
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datum::{g2_pair, galois_orbit, rat};

    #[test]
    fn table1_matches_derived_constants() {
        let fx = fixtures();
        assert_eq!(fx.table1.len(), 11);
        for row in &fx.table1 {
            let g = g2_pair(row.j).unwrap();
            assert_eq!((g.d, g.m), (row.d, row.m), "j={}", row.j);
        }
    }

    #[test]
    fn k2_members_are_the_orbits() {
        let fx = fixtures();
        for (d, combo) in &fx.k2 {
            let orbit = galois_orbit(*d).unwrap();
            assert_eq!(combo.members.len(), orbit.members.len(), "D={d}");
            for m in &combo.members {
                assert!(
                    orbit.members.iter().any(|(r, s)| *r == m.r && *s == m.s),
                    "D={d} member ({},{})",
                    m.r,
                    m.s
                );
            }
            assert_eq!(combo.members[0].coeff, "1");
            assert_eq!(combo.scale_n, 2 * d);
        }
    }

    #[test]
    fn k1_leading_members() {
        let fx = fixtures();
        for (d, combo) in &fx.k1 {
            assert_eq!(combo.members[0].coeff, "1", "D={d}");
            for m in &combo.members {
                assert!(crate::datum::in_s1(&m.r, &m.s), "D={d} ({},{})", m.r, m.s);
            }
        }
        assert_eq!(fx.k1_combination(4).unwrap().members[0].r, rat(1, 4));
        assert_eq!(fx.k1_combination(6).unwrap().scale_n, 6);
        assert_eq!(fx.k1_combination(3).unwrap().scale_n, 12);
    }
}
