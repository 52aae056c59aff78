//! MacWilliams-type transforms, identity verification in cleared form, and
//! realizability checks for candidate enumerators.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::codes::{check_cap, dot, odometer, CodeTuple, LinearCode};
use crate::cyclotomic::{CycField, CyclotomicInt};
use crate::enumerators::{
    self, bracket_count, exact_we, mtuple_hamming_we, restricted_w2, rth_support_we, EnumeratorKind, W2Constraint,
};
use crate::error::{Error, Result};
use crate::galois_ring::{Elem, GaloisRing};
use crate::polynomials::{all_tuples, MultiPoly, Registry, Substitution, Tag, VarKey};
use crate::util::big_pow;
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Hamming,
    Support,
    Complete,
    Exact,
}

impl TransformKind {
    pub fn of(kind: EnumeratorKind) -> Result<Self> {
        match kind {
            EnumeratorKind::Hamming(_) => Ok(TransformKind::Hamming),
            EnumeratorKind::Support(_) => Ok(TransformKind::Support),
            EnumeratorKind::Complete(_) => Ok(TransformKind::Complete),
            EnumeratorKind::Exact(_) => Ok(TransformKind::Exact),
            EnumeratorKind::RSupport(_) => Err(Error::Invalid("no transform is defined for rsupport".into())),
        }
    }
}

/// A substitution map for one transform, built once per key and shared.
#[derive(Debug)]
pub struct TransformSpec {
    kind: TransformKind,
    rings: Vec<GaloisRing>,
    total: u64,
    n: usize,
    sub: Substitution,
    /// Per-position factors of `sub`, applied in turn so that terms merge between positions.
    stages: Vec<Substitution>,
}

type SpecKey = (TransformKind, Vec<GaloisRing>, u64, usize);

fn cache() -> &'static Mutex<HashMap<SpecKey, Arc<TransformSpec>>> {
    static CACHE: OnceLock<Mutex<HashMap<SpecKey, Arc<TransformSpec>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached(key: SpecKey, build: impl FnOnce() -> Result<Substitution>) -> Result<Arc<TransformSpec>> {
    if let Some(s) = cache().lock().expect("transform cache poisoned").get(&key) {
        return Ok(s.clone());
    }
    let sub = build()?;
    let stages = match key.0 {
        TransformKind::Support | TransformKind::Exact => positional_stages(&sub, key.3)?,
        _ => vec![],
    };
    let spec = Arc::new(TransformSpec { kind: key.0, rings: key.1.clone(), total: key.2, n: key.3, sub, stages });
    cache().lock().expect("transform cache poisoned").insert(key, spec.clone());
    Ok(spec)
}

fn position_of(k: &VarKey) -> Option<usize> {
    match k {
        VarKey::Positional { pos, .. } | VarKey::PositionalTuple { pos, .. } => Some(*pos),
        _ => None,
    }
}

/// Distinct monomials of `poly` restricted to the variables at positions `rest`.
fn distinct_projections(poly: &MultiPoly, vars: &[Vec<usize>], rest: &[usize]) -> usize {
    let idx: Vec<usize> = rest.iter().flat_map(|&p| vars[p].iter().copied()).collect();
    poly.terms().keys().map(|m| idx.iter().map(|&i| m[i]).collect::<Vec<u32>>()).collect::<HashSet<_>>().len()
}

const ORDER_BUDGET: usize = 1 << 24;

/// Order in which to transform positions (0-based). Picks, with a two-step lookahead,
/// the position whose removal leaves the fewest distinct untransformed monomials, since
/// the intermediate size grows with that count.
fn stage_order(poly: &MultiPoly, n: usize) -> Vec<usize> {
    if n.pow(3) * poly.num_terms() > ORDER_BUDGET {
        return (0..n).collect();
    }
    let mut vars = vec![Vec::new(); n];
    for (i, k) in poly.registry().keys().iter().enumerate() {
        if let Some(p) = position_of(k) {
            vars[p - 1].push(i);
        }
    }
    let without = |rest: &[usize], j: usize| rest.iter().copied().filter(|&r| r != j).collect::<Vec<_>>();
    let mut rest: Vec<usize> = (0..n).collect();
    let mut order = Vec::with_capacity(n);
    while rest.len() > 2 {
        let best = rest
            .iter()
            .copied()
            .min_by_key(|&j| {
                let r1 = without(&rest, j);
                let two = r1.iter().map(|&k| distinct_projections(poly, &vars, &without(&r1, k))).min();
                (two, distinct_projections(poly, &vars, &r1), j)
            })
            .expect("nonempty");
        rest.retain(|&r| r != best);
        order.push(best);
    }
    order.extend(rest);
    order
}

/// Splits a substitution that maps each position's variables into that position's
/// variables into one substitution per position.
fn positional_stages(sub: &Substitution, n: usize) -> Result<Vec<Substitution>> {
    let reg = sub.source();
    let field = sub.field();
    (1..=n)
        .map(|p| {
            let images = reg
                .keys()
                .iter()
                .zip(sub.images())
                .map(|(k, im)| if position_of(k) == Some(p) { Ok(im.clone()) } else { MultiPoly::var(reg, field, k) })
                .collect::<Result<Vec<_>>>()?;
            Substitution::from_images(reg, images)
        })
        .collect()
}

/// Field holding every character value of the rings. All rings must share
/// one characteristic prime.
pub fn character_field(rings: &[GaloisRing]) -> Result<CycField> {
    let mut field = CycField::rational();
    for r in rings {
        if r.p() != rings[0].p() {
            return Err(Error::NoCommonField(rings[0].characteristic(), r.characteristic()));
        }
        field = field.join(r.char_field())?;
    }
    Ok(field)
}

/// Exponent of `prod_k chi_k(a_k b_k)` as a power of the root of unity of `field`.
fn pairing_exponent(rings: &[GaloisRing], a: &[Elem], b: &[Elem], field: CycField) -> u64 {
    let order = field.order();
    rings.iter().zip(a.iter().zip(b)).map(|(r, (&x, &y))| r.chi_exponent(r.mul(x, y), field)).sum::<u64>() % order
}

fn char_image(rings: &[GaloisRing], alpha: &[Elem], betas: &[Vec<Elem>], field: CycField, key: impl Fn(&[Elem]) -> VarKey, reg: &Arc<Registry>) -> Result<MultiPoly> {
    let mut p = MultiPoly::zero(reg, field);
    for b in betas {
        let var = MultiPoly::var(reg, field, &key(b))?;
        let (m, _) = var.terms().iter().next().expect("a variable has one term");
        p.add_term(m.clone(), CyclotomicInt::root_power(field, pairing_exponent(rings, alpha, b, field) as i64));
    }
    Ok(p)
}

fn cards(rings: &[GaloisRing]) -> Vec<u64> {
    rings.iter().map(GaloisRing::cardinality).collect()
}

impl TransformSpec {
    /// `X -> X + (Q-1) Y`, `Y -> X - Y`.
    pub fn hamming(total: u64) -> Result<Arc<Self>> {
        cached((TransformKind::Hamming, vec![], total, 0), || {
            let reg = Registry::plain();
            let f = CycField::rational();
            let (x, y) = (VarKey::Plain(Tag::X), VarKey::Plain(Tag::Y));
            let images = vec![
                MultiPoly::linear(&reg, f, &[(1, x.clone()), (total as i64 - 1, y.clone())])?,
                MultiPoly::linear(&reg, f, &[(1, x), (-1, y)])?,
            ];
            Substitution::from_images(&reg, images)
        })
    }

    /// `X_P -> X_P + (Q-1) Y_P`, `Y_P -> X_P - Y_P`.
    pub fn support(total: u64, n: usize, limits: &Limits) -> Result<Arc<Self>> {
        cached((TransformKind::Support, vec![], total, n), || {
            let reg = Registry::positional(n, limits.max_registry)?;
            let f = CycField::rational();
            let images = reg
                .keys()
                .iter()
                .map(|k| {
                    let VarKey::Positional { tag, pos } = k else { unreachable!() };
                    let x = VarKey::Positional { tag: Tag::X, pos: *pos };
                    let y = VarKey::Positional { tag: Tag::Y, pos: *pos };
                    match tag {
                        Tag::X => MultiPoly::linear(&reg, f, &[(1, x), (total as i64 - 1, y)]),
                        Tag::Y => MultiPoly::linear(&reg, f, &[(1, x), (-1, y)]),
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            Substitution::from_images(&reg, images)
        })
    }

    /// `X_a -> sum_b prod_k chi_k(a_k b_k) X_b`.
    pub fn complete(rings: &[GaloisRing], limits: &Limits) -> Result<Arc<Self>> {
        let total = cards(rings).iter().product();
        cached((TransformKind::Complete, rings.to_vec(), total, 0), || {
            let field = character_field(rings)?;
            let reg = Registry::column_tuples(&cards(rings), limits.max_registry)?;
            let tuples = all_tuples(&cards(rings), limits.max_registry)?;
            let images = tuples
                .iter()
                .map(|a| char_image(rings, a, &tuples, field, |b| VarKey::ColumnTuple(b.to_vec()), &reg))
                .collect::<Result<Vec<_>>>()?;
            Substitution::from_images(&reg, images)
        })
    }

    /// The complete map applied position by position.
    pub fn exact(rings: &[GaloisRing], n: usize, limits: &Limits) -> Result<Arc<Self>> {
        let total = cards(rings).iter().product();
        cached((TransformKind::Exact, rings.to_vec(), total, n), || {
            let field = character_field(rings)?;
            let reg = Registry::positional_tuples(n, &cards(rings), limits.max_registry)?;
            let tuples = all_tuples(&cards(rings), limits.max_registry)?;
            let images = reg
                .keys()
                .iter()
                .map(|k| {
                    let VarKey::PositionalTuple { pos, tuple } = k else { unreachable!() };
                    let pos = *pos;
                    char_image(rings, tuple, &tuples, field, |b| VarKey::PositionalTuple { pos, tuple: b.to_vec() }, &reg)
                })
                .collect::<Result<Vec<_>>>()?;
            Substitution::from_images(&reg, images)
        })
    }

    pub fn kind(&self) -> TransformKind {
        self.kind
    }

    pub fn rings(&self) -> &[GaloisRing] {
        &self.rings
    }

    /// `prod |R_i|`, the `q^m` of the Hamming-type maps.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn substitution(&self) -> &Substitution {
        &self.sub
    }

    /// Substitutes into `poly`, unscaled.
    pub fn apply(&self, poly: &MultiPoly) -> Result<MultiPoly> {
        self.apply_capped(poly, u64::MAX)
    }

    /// As [`apply`](Self::apply), failing with `CapExceeded` when a stage could
    /// produce more than `max_terms` terms.
    pub fn apply_capped(&self, poly: &MultiPoly, max_terms: u64) -> Result<MultiPoly> {
        let mut p = poly.remap(self.sub.source())?;
        if self.stages.is_empty() {
            return p.apply(&self.sub);
        }
        for i in stage_order(&p, self.n) {
            let stage = &self.stages[i];
            let width = stage.images().iter().map(MultiPoly::num_terms).max().unwrap_or(1);
            check_cap("intermediate transform terms", p.num_terms() as u128 * width as u128, max_terms as u128)?;
            p = p.apply(stage)?;
        }
        Ok(p)
    }
}

fn checked_total(q: u64, m: usize) -> Result<u64> {
    u32::try_from(m)
        .ok()
        .and_then(|m| q.checked_pow(m))
        .filter(|&t| t < 1 << 62)
        .ok_or_else(|| Error::Invalid(format!("q^m = {q}^{m} is too large")))
}

fn positional_length(poly: &MultiPoly) -> Result<usize> {
    poly.registry()
        .keys()
        .iter()
        .map(|k| match k {
            VarKey::Positional { pos, .. } => Ok(*pos),
            _ => Err(Error::IncompatibleRegistry(format!("{k} is not a support variable"))),
        })
        .try_fold(0, |acc, p| Ok(acc.max(p?)))
}

/// `poly(X + (q^m - 1) Y, X - Y)`.
pub fn transform_hamming(poly: &MultiPoly, q: u64, m: usize) -> Result<MultiPoly> {
    TransformSpec::hamming(checked_total(q, m)?)?.apply(poly)
}

/// `X_P -> X_P + (q^m - 1) Y_P`, `Y_P -> X_P - Y_P`.
pub fn transform_support(poly: &MultiPoly, q: u64, m: usize, limits: &Limits) -> Result<MultiPoly> {
    TransformSpec::support(checked_total(q, m)?, positional_length(poly)?, limits)?.apply_capped(poly, limits.max_terms)
}

/// Character-weighted substitution of each column-tuple variable.
pub fn transform_complete(poly: &MultiPoly, rings: &[GaloisRing], limits: &Limits) -> Result<MultiPoly> {
    TransformSpec::complete(rings, limits)?.apply(poly)
}

/// Per-position character-weighted substitution.
pub fn transform_exact(poly: &MultiPoly, rings: &[GaloisRing], n: usize, limits: &Limits) -> Result<MultiPoly> {
    TransformSpec::exact(rings, n, limits)?.apply_capped(poly, limits.max_terms)
}

/// The transform matching `kind` for codes over `rings` of length `n`.
pub fn transform_enumerator(kind: EnumeratorKind, poly: &MultiPoly, rings: &[GaloisRing], n: usize, limits: &Limits) -> Result<MultiPoly> {
    let total: u64 = cards(rings).iter().product();
    match TransformKind::of(kind)? {
        TransformKind::Hamming => TransformSpec::hamming(total)?.apply(poly),
        TransformKind::Support => TransformSpec::support(total, n, limits)?.apply_capped(poly, limits.max_terms),
        TransformKind::Complete => transform_complete(poly, rings, limits),
        TransformKind::Exact => transform_exact(poly, rings, n, limits),
    }
}

/// Enumerator of the dual tuple, computed as `transform(enum(tuple)) / prod |C_i|`.
pub fn dual_enumerator_via_transform(kind: EnumeratorKind, tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    let w = enumerators::enumerate(kind, tuple, limits)?;
    let t = transform_enumerator(kind, &w, &tuple.rings(), tuple.length(), limits)?;
    t.div_exact(&BigInt::from(tuple.tuple_count()))?.to_rational()
}

/// `sum_{u in C} chi(<u, v>)`.
pub fn code_character_sum(code: &LinearCode, v: &[Elem]) -> Result<CyclotomicInt> {
    if v.len() != code.length() {
        return Err(Error::LengthMismatch { expected: code.length(), found: v.len() });
    }
    let ring = code.ring();
    let field = ring.char_field();
    let mut hist = vec![0i64; field.order() as usize];
    for u in code.words() {
        hist[ring.chi_exponent(dot(ring, u, v), field) as usize] += 1;
    }
    Ok(CyclotomicInt::from_root_histogram(field, &hist))
}

/// `sum_{b != 0} prod_k chi_k(a_k b_k)` over `R_1 x .. x R_m`.
pub fn nonzero_column_character_sum(rings: &[GaloisRing], alpha: &[Elem]) -> Result<CyclotomicInt> {
    if alpha.len() != rings.len() {
        return Err(Error::LengthMismatch { expected: rings.len(), found: alpha.len() });
    }
    let field = character_field(rings)?;
    let mut hist = vec![0i64; field.order() as usize];
    for b in all_tuples(&cards(rings), usize::MAX)?.iter().skip(1) {
        hist[pairing_exponent(rings, alpha, b, field) as usize] += 1;
    }
    Ok(CyclotomicInt::from_root_histogram(field, &hist))
}

/// Which identity [`verify_identity`] checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityKind {
    MacWilliams,
    Wan,
    Cwrcs2,
    Britz,
    Exact,
    HamW,
    Klove,
    Dps,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 8] = [
        IdentityKind::MacWilliams,
        IdentityKind::Wan,
        IdentityKind::Cwrcs2,
        IdentityKind::Britz,
        IdentityKind::Exact,
        IdentityKind::HamW,
        IdentityKind::Klove,
        IdentityKind::Dps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::MacWilliams => "macwilliams",
            IdentityKind::Wan => "wan",
            IdentityKind::Cwrcs2 => "cwrcs2",
            IdentityKind::Britz => "britz",
            IdentityKind::Exact => "exact",
            IdentityKind::HamW => "hamw",
            IdentityKind::Klove => "klove",
            IdentityKind::Dps => "dps",
        }
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown identity {s:?}")))
    }
}

/// Outcome of an identity check: both sides and where they first differ.
#[derive(Debug, Clone)]
pub struct Report {
    pub kind: String,
    pub tuple: String,
    pub passed: bool,
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub first_difference: Option<String>,
    pub notes: Vec<String>,
}

impl Report {
    /// Compares `lhs` and `rhs` exactly.
    pub fn compare(kind: impl Into<String>, tuple: impl Into<String>, lhs: MultiPoly, rhs: MultiPoly) -> Result<Self> {
        let diff = lhs.sub(&rhs)?;
        let passed = diff.is_zero();
        let rhs = if passed { rhs.to_rational().unwrap_or(rhs) } else { rhs };
        let first_difference = if passed { None } else { lhs.first_difference(&rhs) };
        Ok(Report { kind: kind.into(), tuple: tuple.into(), passed, lhs, rhs, first_difference, notes: vec![] })
    }

    fn fail_with(mut self, note: String) -> Self {
        self.passed = false;
        self.notes.push(note);
        self
    }

    pub fn to_json(&self) -> Value {
        let poly = |p: &MultiPoly| p.to_json().unwrap_or_else(|_| Value::String(p.to_string()));
        json!({
            "kind": self.kind,
            "tuple": self.tuple,
            "passed": self.passed,
            "lhs": self.lhs.to_string(),
            "rhs": self.rhs.to_string(),
            "lhs_terms": poly(&self.lhs),
            "rhs_terms": poly(&self.rhs),
            "first_difference": self.first_difference,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {}", self.kind)?;
        writeln!(f, "tuple: {}", self.tuple)?;
        writeln!(f, "result: {}", if self.passed { "pass" } else { "FAIL" })?;
        writeln!(f, "lhs: {}", self.lhs)?;
        writeln!(f, "rhs: {}", self.rhs)?;
        if let Some(d) = &self.first_difference {
            writeln!(f, "first difference: {d}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

fn single_code(tuple: &CodeTuple, kind: IdentityKind) -> Result<&LinearCode> {
    let c = &tuple.codes()[0];
    if tuple.codes().iter().any(|d| d != c) {
        return Err(Error::Invalid(format!("{kind} needs m copies of one code")));
    }
    Ok(c)
}

fn need_m1(tuple: &CodeTuple, kind: IdentityKind) -> Result<()> {
    if tuple.m() != 1 {
        return Err(Error::Invalid(format!("{kind} is stated for a single code (m = 1), got m = {}", tuple.m())));
    }
    Ok(())
}

/// Checks `prod |C_i| * enum(duals) = transform(enum(codes))` for the enumerator behind `kind`.
pub fn verify_identity(kind: IdentityKind, tuple: &CodeTuple, limits: &Limits) -> Result<Report> {
    let m = tuple.m();
    let enum_kind = match kind {
        IdentityKind::MacWilliams => {
            need_m1(tuple, kind)?;
            EnumeratorKind::Hamming(1)
        }
        IdentityKind::Wan => {
            need_m1(tuple, kind)?;
            EnumeratorKind::Complete(1)
        }
        IdentityKind::HamW => EnumeratorKind::Hamming(m),
        IdentityKind::Cwrcs2 => EnumeratorKind::Complete(m),
        IdentityKind::Britz => EnumeratorKind::Support(m),
        IdentityKind::Exact => EnumeratorKind::Exact(m),
        IdentityKind::Klove => return verify_klove(tuple, limits),
        IdentityKind::Dps => return verify_dps(tuple, limits),
    };
    character_field(&tuple.rings())?;
    let duals = tuple.duals(limits)?;
    let count = BigInt::from(tuple.tuple_count());
    let lhs = enumerators::enumerate(enum_kind, &duals, limits)?.scale_int(&count);
    let w = enumerators::enumerate(enum_kind, tuple, limits)?;
    let rhs = transform_enumerator(enum_kind, &w, &tuple.rings(), tuple.length(), limits)?;
    Report::compare(kind.name(), tuple.to_string(), lhs, rhs)
}

/// `sum_r [m]_r W^(r)_C`, skipping the vanishing brackets.
pub fn klove_sum(code: &LinearCode, m: usize, limits: &Limits) -> Result<MultiPoly> {
    let q = code.ring().cardinality();
    let k = code.dimension().ok_or(Error::NotAField)?;
    let mut sum = MultiPoly::zero(&Registry::plain(), CycField::rational());
    for r in 0..=k.min(m) {
        let b = bracket_count(q, m as u32, r as u32);
        if b.is_zero() {
            continue;
        }
        sum = sum.add(&rth_support_we(code, r, limits)?.scale_int(&b))?;
    }
    Ok(sum)
}

fn verify_klove(tuple: &CodeTuple, limits: &Limits) -> Result<Report> {
    let code = single_code(tuple, IdentityKind::Klove)?;
    let m = tuple.m();
    let q = code.ring().cardinality();
    let k = code.dimension().ok_or(Error::NotAField)?;
    let dual = code.dual(limits)?;
    let lhs = klove_sum(&dual, m, limits)?.scale_int(&big_pow(q, (k * m) as u32));
    let sum = klove_sum(code, m, limits)?;
    let rhs = transform_hamming(&sum, q, m)?;
    let report = Report::compare("klove", tuple.to_string(), lhs, rhs)?;
    let direct = mtuple_hamming_we(tuple, limits)?;
    if direct != sum {
        let d = direct.first_difference(&sum).unwrap_or_default();
        return Ok(report.fail_with(format!("W^[m] differs from sum_r [m]_r W^(r): {d}")));
    }
    Ok(report)
}

/// Poisson summation with the exact-enumerator test function: the right side
/// sums `G^(u)` over the code tuple, using `sum_u chi(<u,v>)` evaluated
/// exhaustively for every `v`.
fn verify_dps(tuple: &CodeTuple, limits: &Limits) -> Result<Report> {
    let rings = tuple.rings();
    let field = character_field(&rings)?;
    let n = tuple.length();
    let duals = tuple.duals(limits)?;
    let lhs = exact_we(&duals, limits)?.scale_int(&BigInt::from(tuple.tuple_count()));

    let mut supports: Vec<Vec<(Vec<Elem>, CyclotomicInt)>> = Vec::new();
    for code in tuple.codes() {
        let q = code.ring().cardinality();
        let scan = (0..n).fold(1u128, |a, _| a.saturating_mul(q as u128));
        check_cap("character-sum scan |R|^N", scan, limits.max_scan as u128)?;
        let mut nonzero = Vec::new();
        let mut v = vec![0 as Elem; n];
        loop {
            let s = code_character_sum(code, &v)?;
            if !s.is_zero() {
                nonzero.push((v.clone(), s.embed(field)?));
            }
            if !odometer(&mut v, q as Elem) {
                break;
            }
        }
        supports.push(nonzero);
    }
    let combos = supports.iter().fold(1u128, |a, s| a.saturating_mul(s.len() as u128));
    check_cap("Poisson summation terms", combos, limits.max_tuples as u128)?;

    let cards = cards(&rings);
    let reg = Registry::positional_tuples(n, &cards, limits.max_registry)?;
    let per_pos: u64 = cards.iter().product();
    let mut rhs = MultiPoly::zero(&reg, field);
    let mut idx = vec![0usize; supports.len()];
    if supports.iter().all(|s| !s.is_empty()) {
        'outer: loop {
            let mut coeff = CyclotomicInt::one(field);
            let mut col = vec![0u64; n];
            for (k, s) in supports.iter().enumerate() {
                let (v, c) = &s[idx[k]];
                coeff = &coeff * c;
                for (x, &y) in col.iter_mut().zip(v) {
                    *x = *x * cards[k] + y as u64;
                }
            }
            let mut e = vec![0u32; reg.len()];
            for (p, &x) in col.iter().enumerate() {
                e[p * per_pos as usize + x as usize] = 1;
            }
            rhs.add_term(e.into_boxed_slice(), coeff);
            for (k, s) in supports.iter().enumerate() {
                idx[k] += 1;
                if idx[k] < s.len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
    }
    Report::compare("dps", tuple.to_string(), lhs, rhs)
}

fn field_q(code: &LinearCode) -> Result<u64> {
    if !code.ring().is_field() {
        return Err(Error::NotAField);
    }
    Ok(code.ring().cardinality())
}

fn plain_xy() -> (MultiPoly, MultiPoly) {
    let reg = Registry::plain();
    let f = CycField::rational();
    (MultiPoly::var(&reg, f, &VarKey::Plain(Tag::X)).unwrap(), MultiPoly::var(&reg, f, &VarKey::Plain(Tag::Y)).unwrap())
}

fn int<T: Into<BigInt>>(n: T) -> BigInt {
    n.into()
}

/// Assembles `W^[2]_{C1,C2}` from support enumerators of `r`-dimensional subcodes.
pub fn decompose_pair_we(c1: &LinearCode, c2: &LinearCode, limits: &Limits) -> Result<MultiPoly> {
    let q = field_q(c1)?;
    c1.ring().check_same(c2.ring())?;
    let n = c1.length();
    let both = c1.intersection(c2, limits)?;
    let join = c1.join(c2, limits)?;
    let q1: BigInt = int(q) - 1;
    let (x, _) = plain_xy();
    let w = |c: &LinearCode, r| rth_support_we(c, r, limits);
    let a = |c: &LinearCode| restricted_w2(c, &W2Constraint::IntersectDim1(both.clone()), limits);
    let parts = [
        (int(1), x.pow(n as u32)?),
        (q1.clone(), w(c1, 1)?.add(&w(c2, 1)?)?),
        (&q1 * &q1, w(&both, 1)?),
        ((int(q * q) - 1) * (int(q * q) - q), w(&both, 2)?),
        (int(q) * &q1 * &q1, a(c1)?.add(&a(c2)?)?),
        (&q1 * &q1, restricted_w2(&join, &W2Constraint::NotSubcodeOfEither(c1.clone(), c2.clone()), limits)?),
    ];
    let mut sum = MultiPoly::zero(&Registry::plain(), CycField::rational());
    for (c, p) in parts {
        sum = sum.add(&p.scale_int(&c))?;
    }
    Ok(sum)
}

fn check_repetition_code(r: &LinearCode, ring: &GaloisRing, n: usize) -> Result<()> {
    ring.check_same(r.ring())?;
    if r.length() != n {
        return Err(Error::LengthMismatch { expected: n, found: r.length() });
    }
    if r.dimension() != Some(1) || !r.words().iter().any(|w| w.iter().all(|&x| x != 0)) {
        return Err(Error::Invalid("R must be one-dimensional with a generator of full support".into()));
    }
    Ok(())
}

/// `(C_1, .., C_m, R x s, R^perp x t)`.
pub fn repetition_tuple(tuple: &CodeTuple, s: usize, t: usize, r: &LinearCode, limits: &Limits) -> Result<CodeTuple> {
    let rd = r.dual(limits)?;
    let mut codes = tuple.codes().to_vec();
    codes.extend(std::iter::repeat_n(r.clone(), s));
    codes.extend(std::iter::repeat_n(rd, t));
    CodeTuple::new(codes)
}

/// `q^t W^[m+s+t]` of [`repetition_tuple`], from `W^[m]` alone.
pub fn repetition_formula(tuple: &CodeTuple, s: usize, t: usize, r: &LinearCode, limits: &Limits) -> Result<MultiPoly> {
    let ring = tuple.common_ring()?;
    let q = field_q(&tuple.codes()[0])?;
    let n = tuple.length();
    check_repetition_code(r, ring, n)?;
    let (s32, t32, n32) = (s as u32, t as u32, n as u32);
    let qt = big_pow(q, t32);
    let (x, y) = plain_xy();
    let first = y.pow(n32)?.scale_int(&(&qt * (big_pow(q, s32) - 1) * big_pow(q, (n32 - 1) * t32) * tuple.tuple_count()));
    let second = x.sub(&y)?.pow(n32)?.scale_int(&(&qt - 1));
    let w = mtuple_hamming_we(tuple, limits)?;
    let map = HashMap::from([
        (VarKey::Plain(Tag::X), x.add(&y.scale_int(&(&qt - 1)))?),
        (VarKey::Plain(Tag::Y), y.scale_int(&qt)),
    ]);
    first.add(&second)?.add(&w.substitute(&map)?)
}

/// Result of [`check_invariance`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Invariance {
    Invariant,
    NotInvariant,
    Unsupported,
}

impl fmt::Display for Invariance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariance::Invariant => "invariant",
            Invariance::NotInvariant => "not invariant",
            Invariance::Unsupported => "unsupported (N*m odd)",
        })
    }
}

fn plain_degree(poly: &MultiPoly) -> Result<u32> {
    if poly.registry().keys().iter().any(|k| !matches!(k, VarKey::Plain(_))) {
        return Err(Error::IncompatibleRegistry("expected a polynomial in X and Y".into()));
    }
    poly.homogeneous_degree().ok_or(Error::NotHomogeneous)
}

/// Whether `W(X + (q^m-1) Y, X - Y) = q^(Nm/2) W(X, Y)`.
pub fn check_invariance(poly: &MultiPoly, q: u64, m: usize) -> Result<Invariance> {
    let n = plain_degree(poly)? as usize;
    if (n * m) % 2 == 1 {
        return Ok(Invariance::Unsupported);
    }
    let t = transform_hamming(poly, q, m)?;
    let scaled = poly.scale_int(&big_pow(q, (n * m / 2) as u32));
    Ok(if t.sub(&scaled)?.is_zero() { Invariance::Invariant } else { Invariance::NotInvariant })
}

/// Result of [`check_divisibility`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisibilityReport {
    pub degree: u32,
    pub divisor: BigInt,
    /// `(i, coefficient of X^i Y^(N-i))` for each coefficient not divisible.
    pub failures: Vec<(u32, BigInt)>,
    pub leading: BigInt,
}

impl DivisibilityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.leading.is_one()
    }
}

fn xy_name(i: u32, j: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", part("X", i), part("Y", j));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

impl fmt::Display for DivisibilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree;
        if self.passed() {
            return write!(f, "passes: coefficients of X^iY^(N-i), i < N, are divisible by {} and the X^N coefficient is 1", self.divisor);
        }
        let mut msgs: Vec<String> = self
            .failures
            .iter()
            .map(|(i, c)| format!("{} coefficient {c} not divisible by {}", xy_name(*i, n - i), self.divisor))
            .collect();
        if !self.leading.is_one() {
            msgs.push(format!("{} coefficient {} is not 1", xy_name(n, 0), self.leading));
        }
        write!(f, "fails: {}", msgs.join("; "))
    }
}

/// Necessary conditions for `poly` to be `W^[m]` of m copies of one code over `F_q`.
pub fn check_divisibility(poly: &MultiPoly, q: u64, m: usize) -> Result<DivisibilityReport> {
    let n = plain_degree(poly)?;
    let poly = poly.to_rational()?.remap(&Registry::plain())?;
    let divisor = int(checked_total(q, m)?) - 1;
    let mut failures = Vec::new();
    for i in (0..n).rev() {
        let c = poly.coefficient(&[i, n - i]);
        let c = c.as_integer().expect("rational").clone();
        if !c.is_multiple_of(&divisor) {
            failures.push((i, c));
        }
    }
    let leading = poly.coefficient(&[n, 0]).as_integer().expect("rational").clone();
    Ok(DivisibilityReport { degree: n, divisor, failures, leading })
}

/// Checks `q^(Nm) W^[2m] = W^[2m](X + (q^(2m)-1) Y, X - Y)` for `m` copies of `C` and `C^perp`.
pub fn corollary_selfdual_pair(code: &LinearCode, m: usize, limits: &Limits) -> Result<Report> {
    let q = field_q(code)?;
    let n = code.length();
    let dual = code.dual(limits)?;
    let mut codes = vec![code.clone(); m];
    codes.extend(std::iter::repeat_n(dual, m));
    let tuple = CodeTuple::new(codes)?;
    let w = mtuple_hamming_we(&tuple, limits)?;
    let lhs = w.scale_int(&big_pow(q, (n * m) as u32));
    let rhs = transform_hamming(&w, q, 2 * m)?;
    Report::compare("corollary", tuple.to_string(), lhs, rhs)
}
