//! Discriminant-bounded censuses of GL2(Z)-classes of binary cubic forms
//! and of Borel orbits on forms with a linear factor.

pub(crate) mod enumerate;
pub mod oracle;
pub mod worbits;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::forms::int::is_square;
use crate::forms::reduce::stabilizer_count;
use crate::forms::roots::{cofactor, rational_root};
use crate::forms::{discriminant, Form};
use crate::localtypes::modp::is_prime;
use crate::localtypes::{projective_roots_mod_p, symbol_from_root_count, symbol_padic, PAdicContext, SplittingSymbol};

pub use enumerate::MAX_ENUMERATION_BOUND;
pub use oracle::brute_force_census;
pub use worbits::{enumerate_w_orbits, WOrbit};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn contains(self, d: i64) -> bool {
        match self {
            Sign::Positive => d > 0,
            Sign::Negative => d < 0,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

impl FromStr for Sign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "+" | "pos" | "positive" => Ok(Sign::Positive),
            "-" | "neg" | "negative" => Ok(Sign::Negative),
            _ => Err(Error::InvalidRequest(format!("unknown sign {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Population {
    Irreducible,
    Reducible,
    All,
    WOrbits,
}

impl fmt::Display for Population {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Population::Irreducible => "irreducible",
            Population::Reducible => "reducible",
            Population::All => "all",
            Population::WOrbits => "w-orbits",
        })
    }
}

impl FromStr for Population {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "irreducible" => Ok(Population::Irreducible),
            "reducible" => Ok(Population::Reducible),
            "all" => Ok(Population::All),
            "w-orbits" | "w" => Ok(Population::WOrbits),
            _ => Err(Error::InvalidRequest(format!("unknown population {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRequest {
    pub sign: Sign,
    pub x: u64,
    pub conditions: Vec<(u64, SplittingSymbol)>,
    pub weighted: bool,
    pub population: Population,
}

impl CensusRequest {
    pub fn new(sign: Sign, x: u64, population: Population) -> Self {
        CensusRequest { sign, x, conditions: Vec::new(), weighted: false, population }
    }

    pub fn with_condition(mut self, p: u64, s: SplittingSymbol) -> Self {
        self.conditions.push((p, s));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.x == 0 {
            return Err(Error::InvalidRequest("discriminant bound must be at least 1".into()));
        }
        let mut seen = Vec::new();
        for &(p, _) in &self.conditions {
            if !is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            if seen.contains(&p) {
                return Err(Error::InvalidRequest(format!("prime {p} conditioned twice")));
            }
            seen.push(p);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducibleKind {
    /// Three rational linear factors.
    V1,
    /// A rational linear factor times an irreducible quadratic.
    V2,
}

pub fn classify_reducible(f: &Form) -> Result<ReducibleKind> {
    if discriminant(f) == 0.into() {
        return Err(Error::Degenerate);
    }
    let c = f.coeffs();
    let root = rational_root(&c).ok_or(Error::IrreducibleInput)?;
    let [a, b, cc] = cofactor(&c, &root);
    Ok(if is_square(&(&b * &b - 4 * &a * &cc)) { ReducibleKind::V1 } else { ReducibleKind::V2 })
}

/// Canonical representatives of every class with `0 < sign * disc < x`.
pub fn enumerate_v_classes(sign: Sign, x: u64) -> Result<Vec<Form>> {
    Ok(enumerate::enumerate_small(sign, x)?.into_iter().map(|(f, _)| Form::from(f)).collect())
}

/// Splitting symbol of a small form with known discriminant.
pub(crate) fn symbol_small(f: &[i64; 4], d: i64, p: u64) -> Result<SplittingSymbol> {
    if (d as i128).rem_euclid(p as i128) != 0 {
        let r = f.map(|c| (c as i128).rem_euclid(p as i128) as u64);
        return Ok(symbol_from_root_count(projective_roots_mod_p(r, p)));
    }
    let form = Form::from(*f);
    symbol_padic(&form, &PAdicContext::for_form(&form, p)?)
}

/// Irreducibility and automorphism count of a canonical form.
pub(crate) fn class_data(f: &[i64; 4], d: i64) -> (bool, u32) {
    let w = f.map(i128::from);
    let irreducible = rational_root(&w).is_none();
    let aut = if irreducible && !is_square(&(d as i128)) { 1 } else { stabilizer_count(&w) };
    (irreducible, aut)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscEntry {
    pub count: u64,
    /// Sum of `6 / #Aut` over the classes.
    pub weight_sixths: u64,
    /// Classes with automorphism group of order 3.
    pub cyclic: u64,
    /// Lexicographically smallest canonical representative.
    pub representative: Form,
}

impl DiscEntry {
    pub fn weighted(&self) -> Ratio<u64> {
        Ratio::new(self.weight_sixths, 6)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cumulative {
    pub h: u64,
    pub weight_sixths: u64,
    pub cyclic: u64,
}

impl Cumulative {
    pub fn weighted(&self) -> Ratio<u64> {
        Ratio::new(self.weight_sixths, 6)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub request: CensusRequest,
    /// Keyed by signed discriminant.
    pub entries: BTreeMap<i64, DiscEntry>,
}

impl CensusTable {
    fn tally(&mut self, d: i64, form: Form, sixths: u64, cyclic: bool) {
        let e = self.entries.entry(d).or_insert_with(|| DiscEntry {
            count: 0,
            weight_sixths: 0,
            cyclic: 0,
            representative: form.clone(),
        });
        e.count += 1;
        e.weight_sixths += sixths;
        e.cyclic += u64::from(cyclic);
        if form < e.representative {
            e.representative = form;
        }
    }

    /// Totals over classes with `|disc| < x`.
    pub fn cumulative(&self, x: u64) -> Cumulative {
        let mut c = Cumulative { h: 0, weight_sixths: 0, cyclic: 0 };
        for (d, e) in &self.entries {
            if d.unsigned_abs() < x {
                c.h += e.count;
                c.weight_sixths += e.weight_sixths;
                c.cyclic += e.cyclic;
            }
        }
        c
    }

    /// Entries in order of increasing `|disc|`.
    pub fn rows(&self) -> Vec<(i64, &DiscEntry)> {
        let mut v: Vec<_> = self.entries.iter().map(|(d, e)| (*d, e)).collect();
        v.sort_by_key(|(d, _)| d.unsigned_abs());
        v
    }
}

fn passes(conds: &[(u64, SplittingSymbol)], f: &[i64; 4], d: i64) -> Result<bool> {
    for &(p, s) in conds {
        if symbol_small(f, d, p)? != s {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A canonical class with its discriminant, irreducibility and `#Aut`.
type ClassRecord = ([i64; 4], i64, bool, u32);

fn classify_all(sign: Sign, x: u64) -> Result<Vec<ClassRecord>> {
    Ok(enumerate::enumerate_small(sign, x)?
        .into_par_iter()
        .map(|(f, d)| {
            let (irreducible, aut) = class_data(&f, d);
            (f, d, irreducible, aut)
        })
        .collect())
}

fn tabulate(req: &CensusRequest, classes: &[ClassRecord]) -> Result<CensusTable> {
    let kept: Vec<Option<&ClassRecord>> = classes
        .par_iter()
        .map(|rec| {
            let &(f, d, irreducible, _) = rec;
            let wanted = match req.population {
                Population::Irreducible => irreducible,
                Population::Reducible => !irreducible,
                _ => true,
            };
            if !wanted || d.unsigned_abs() >= req.x || !passes(&req.conditions, &f, d)? {
                return Ok(None);
            }
            Ok(Some(rec))
        })
        .collect::<Result<_>>()?;
    let mut table = CensusTable { request: req.clone(), entries: BTreeMap::new() };
    for &(f, d, _, aut) in kept.into_iter().flatten() {
        table.tally(d, Form::from(f), 6 / u64::from(aut), aut == 3);
    }
    Ok(table)
}

fn w_census(req: &CensusRequest) -> Result<CensusTable> {
    let kept: Vec<Option<WOrbit>> = enumerate_w_orbits(req.x)?
        .into_par_iter()
        .filter(|w| req.sign.contains(w.disc()))
        .map(|w| {
            let f = [0, w.y1, w.y2, w.y3];
            Ok(passes(&req.conditions, &f, w.disc())?.then_some(w))
        })
        .collect::<Result<_>>()?;
    let mut table = CensusTable { request: req.clone(), entries: BTreeMap::new() };
    for w in kept.into_iter().flatten() {
        table.tally(w.disc(), w.form(), 6 / u64::from(w.stab_order), false);
    }
    Ok(table)
}

pub fn run_census(req: &CensusRequest) -> Result<CensusTable> {
    req.validate()?;
    if req.population == Population::WOrbits {
        return w_census(req);
    }
    tabulate(req, &classify_all(req.sign, req.x)?)
}

/// Runs several requests, enumerating each sign once at the largest bound.
/// Results come back in request order and equal those of [`run_census`].
pub fn run_census_batch(reqs: &[CensusRequest]) -> Result<Vec<CensusTable>> {
    for r in reqs {
        r.validate()?;
    }
    let mut shared: Vec<(Sign, Vec<ClassRecord>)> = Vec::new();
    for sign in [Sign::Positive, Sign::Negative] {
        let xmax = reqs
            .iter()
            .filter(|r| r.sign == sign && r.population != Population::WOrbits)
            .map(|r| r.x)
            .max();
        if let Some(x) = xmax {
            shared.push((sign, classify_all(sign, x)?));
        }
    }
    reqs.iter()
        .map(|r| {
            if r.population == Population::WOrbits {
                return w_census(r);
            }
            let classes = &shared.iter().find(|(s, _)| *s == r.sign).expect("enumerated above").1;
            tabulate(r, classes)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckpointPolicy {
    /// `X, X/2, X/4, ...`
    Geometric,
    /// `X, 9X/10, ..., X/10`
    Linear,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub x: u64,
    pub h: u64,
    pub weight_sixths: u64,
    pub cyclic: u64,
}

impl Checkpoint {
    pub fn weighted(&self) -> Ratio<u64> {
        Ratio::new(self.weight_sixths, 6)
    }
}

/// Cumulative counts at the checkpoint grid, in increasing order of `X'`.
pub fn partial_sum_table(table: &CensusTable, policy: CheckpointPolicy) -> Vec<Checkpoint> {
    let x = table.request.x;
    let mut grid: Vec<u64> = match policy {
        CheckpointPolicy::Geometric => (0..64).map(|j| x >> j).take_while(|&v| v >= 1).collect(),
        CheckpointPolicy::Linear => (1..=10).map(|k| x * k / 10).filter(|&v| v >= 1).collect(),
    };
    grid.sort_unstable();
    grid.dedup();
    // single sweep over the entries sorted by |disc|
    let rows = table.rows();
    let mut out = Vec::with_capacity(grid.len());
    let mut acc = Cumulative { h: 0, weight_sixths: 0, cyclic: 0 };
    let mut i = 0;
    for xp in grid {
        while i < rows.len() && rows[i].0.unsigned_abs() < xp {
            acc.h += rows[i].1.count;
            acc.weight_sixths += rows[i].1.weight_sixths;
            acc.cyclic += rows[i].1.cyclic;
            i += 1;
        }
        out.push(Checkpoint { x: xp, h: acc.h, weight_sixths: acc.weight_sixths, cyclic: acc.cyclic });
    }
    out
}
