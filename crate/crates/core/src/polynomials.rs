//! Sparse multivariate polynomials over [`CyclotomicInt`] with a typed,
//! lexicographically ordered variable registry.
//!
//! Every enumerator and every transform in the crate is a [`MultiPoly`]; the
//! MacWilliams-type identities are all instances of [`MultiPoly::substitute`].

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::cyclotomic::{CycField, CyclotomicInt};
use crate::error::{Error, Result};
use crate::galois_ring::Elem;

/// Exponent vector, dense over the registry.
pub type Monomial = Box<[u32]>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    X,
    Y,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tag::X => "X",
            Tag::Y => "Y",
        })
    }
}

/// A variable. Positions are 1-based; tuple entries are element indices.
///
/// The derived order is the registry order: `X < Y`, then `X_1 < .. < X_N <
/// Y_1 < .. < Y_N`, column tuples lexicographically, positional tuples by
/// position and then tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarKey {
    Plain(Tag),
    Positional { tag: Tag, pos: usize },
    ColumnTuple(Vec<Elem>),
    PositionalTuple { pos: usize, tuple: Vec<Elem> },
}

impl VarKey {
    fn family(&self) -> u8 {
        match self {
            VarKey::Plain(_) => 0,
            VarKey::Positional { .. } => 1,
            VarKey::ColumnTuple(_) => 2,
            VarKey::PositionalTuple { .. } => 3,
        }
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, t: &[Elem]) -> fmt::Result {
    f.write_str("(")?;
    for (i, x) in t.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str(")")
}

impl fmt::Display for VarKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarKey::Plain(t) => write!(f, "{t}"),
            VarKey::Positional { tag, pos } => write!(f, "{tag}_{pos}"),
            VarKey::ColumnTuple(t) => {
                f.write_str("X_")?;
                write_tuple(f, t)
            }
            VarKey::PositionalTuple { pos, tuple } => {
                write!(f, "X_{pos}_")?;
                write_tuple(f, tuple)
            }
        }
    }
}

/// Ordered set of variables shared by a family of polynomials.
#[derive(Debug, Clone)]
pub struct Registry {
    keys: Vec<VarKey>,
    index: HashMap<VarKey, usize>,
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        self.keys == other.keys
    }
}

impl Eq for Registry {}

/// Default registry-size cap.
pub const DEFAULT_MAX_REGISTRY: usize = 4096;

impl Registry {
    /// Sorts and deduplicates `keys`; all keys must come from one family.
    pub fn new(mut keys: Vec<VarKey>, cap: usize) -> Result<Arc<Self>> {
        keys.sort();
        keys.dedup();
        if keys.len() > cap {
            return Err(Error::CapExceeded { what: "variable registry", needed: keys.len() as u128, cap: cap as u128 });
        }
        if let Some(first) = keys.first() {
            if keys.iter().any(|k| k.family() != first.family()) {
                return Err(Error::IncompatibleRegistry("mixed variable families".into()));
            }
        }
        let index = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        Ok(Arc::new(Registry { keys, index }))
    }

    /// `[X, Y]`.
    pub fn plain() -> Arc<Self> {
        Self::new(vec![VarKey::Plain(Tag::X), VarKey::Plain(Tag::Y)], 2).unwrap()
    }

    /// `X_1..X_N, Y_1..Y_N`.
    pub fn positional(n: usize, cap: usize) -> Result<Arc<Self>> {
        let keys = [Tag::X, Tag::Y]
            .into_iter()
            .flat_map(|tag| (1..=n).map(move |pos| VarKey::Positional { tag, pos }))
            .collect();
        Self::new(keys, cap)
    }

    /// One variable per column value in `R_1 x .. x R_m`, given the ring sizes.
    pub fn column_tuples(cards: &[u64], cap: usize) -> Result<Arc<Self>> {
        let keys = all_tuples(cards, cap)?.into_iter().map(VarKey::ColumnTuple).collect();
        Self::new(keys, cap)
    }

    /// One variable per position and column value.
    pub fn positional_tuples(n: usize, cards: &[u64], cap: usize) -> Result<Arc<Self>> {
        let tuples = all_tuples(cards, cap)?;
        let needed = (tuples.len() as u128) * n as u128;
        if needed > cap as u128 {
            return Err(Error::CapExceeded { what: "variable registry", needed, cap: cap as u128 });
        }
        let keys = (1..=n)
            .flat_map(|pos| tuples.iter().map(move |t| VarKey::PositionalTuple { pos, tuple: t.clone() }))
            .collect();
        Self::new(keys, cap)
    }

    pub fn keys(&self) -> &[VarKey] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn index_of(&self, key: &VarKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    fn is_plain(&self) -> bool {
        self.keys.iter().all(|k| matches!(k, VarKey::Plain(_)))
    }
}

/// All tuples of element indices, lexicographic with the first entry most significant.
pub(crate) fn all_tuples(cards: &[u64], cap: usize) -> Result<Vec<Vec<Elem>>> {
    let total = cards.iter().fold(1u128, |a, &c| a.saturating_mul(c as u128));
    if total > cap as u128 {
        return Err(Error::CapExceeded { what: "variable registry", needed: total, cap: cap as u128 });
    }
    let mut out = vec![vec![]];
    for &c in cards {
        out = out
            .into_iter()
            .flat_map(|t: Vec<Elem>| {
                (0..c as Elem).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    Ok(out)
}

/// A polynomial over `Z[zeta]` in the variables of a registry.
#[derive(Debug, Clone)]
pub struct MultiPoly {
    registry: Arc<Registry>,
    field: CycField,
    terms: HashMap<Monomial, CyclotomicInt>,
}

impl PartialEq for MultiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.registry == other.registry && self.terms == other.terms
    }
}

impl Eq for MultiPoly {}

/// Selector for [`MultiPoly::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineOp {
    Add,
    Sub,
}

impl MultiPoly {
    pub fn zero(registry: &Arc<Registry>, field: CycField) -> Self {
        MultiPoly { registry: registry.clone(), field, terms: HashMap::new() }
    }

    pub fn constant(registry: &Arc<Registry>, c: CyclotomicInt) -> Self {
        let mut p = Self::zero(registry, c.field());
        if !c.is_zero() {
            p.terms.insert(vec![0; registry.len()].into_boxed_slice(), c);
        }
        p
    }

    pub fn var(registry: &Arc<Registry>, field: CycField, key: &VarKey) -> Result<Self> {
        let i = registry.index_of(key).ok_or_else(|| Error::IncompatibleRegistry(format!("{key} not in registry")))?;
        let mut exps = vec![0; registry.len()];
        exps[i] = 1;
        let mut p = Self::zero(registry, field);
        p.terms.insert(exps.into_boxed_slice(), CyclotomicInt::one(field));
        Ok(p)
    }

    /// Builds a polynomial from integer-coefficient terms.
    pub fn from_integer_terms<I, C>(registry: &Arc<Registry>, field: CycField, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero(registry, field);
        for (m, c) in terms {
            p.add_term(m, CyclotomicInt::from_integer(field, c.into()));
        }
        p
    }

    /// Linear form `sum c_i key_i` with integer coefficients.
    pub fn linear(registry: &Arc<Registry>, field: CycField, parts: &[(i64, VarKey)]) -> Result<Self> {
        let mut p = Self::zero(registry, field);
        for (c, key) in parts {
            let v = Self::var(registry, field, key)?;
            p = p.add(&v.scale_int(&BigInt::from(*c)))?;
        }
        Ok(p)
    }

    pub fn registry(&self) -> &Arc<Registry> {
        &self.registry
    }

    pub fn field(&self) -> CycField {
        self.field
    }

    pub fn terms(&self) -> &HashMap<Monomial, CyclotomicInt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exps: &[u32]) -> CyclotomicInt {
        self.terms.get(exps).cloned().unwrap_or_else(|| CyclotomicInt::zero(self.field))
    }

    /// Adds `c * monomial` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: CyclotomicInt) {
        debug_assert_eq!(m.len(), self.registry.len());
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                e.get_mut().add_assign_ref(&c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// Terms sorted descending lexicographically by exponent vector.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &CyclotomicInt)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| b.0.cmp(a.0));
        t
    }

    /// Re-expresses coefficients in a larger cyclotomic field.
    pub fn embed(&self, field: CycField) -> Result<Self> {
        if field == self.field {
            return Ok(self.clone());
        }
        let terms = self.terms.iter().map(|(m, c)| Ok((m.clone(), c.embed(field)?))).collect::<Result<_>>()?;
        Ok(MultiPoly { registry: self.registry.clone(), field, terms })
    }

    /// Same polynomial over `Q`; fails unless every coefficient is an integer.
    pub fn to_rational(&self) -> Result<Self> {
        let field = CycField::rational();
        let mut out = Self::zero(&self.registry, field);
        for (m, c) in &self.terms {
            let n = c.as_integer().ok_or_else(|| Error::NonIntegerCoefficient(c.to_string()))?;
            out.terms.insert(m.clone(), CyclotomicInt::from_integer(field, n.clone()));
        }
        Ok(out)
    }

    /// Moves the polynomial into a registry containing all of its variables.
    pub fn remap(&self, target: &Arc<Registry>) -> Result<Self> {
        if Arc::ptr_eq(target, &self.registry) || *target == self.registry {
            return Ok(MultiPoly { registry: target.clone(), ..self.clone() });
        }
        let map: Vec<Option<usize>> = self.registry.keys.iter().map(|k| target.index_of(k)).collect();
        let mut out = Self::zero(target, self.field);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i].ok_or_else(|| {
                    Error::IncompatibleRegistry(format!("{} missing from target", self.registry.keys[i]))
                })?;
                e[j] = x;
            }
            out.add_term(e.into_boxed_slice(), c.clone());
        }
        Ok(out)
    }

    /// Brings two operands to a common registry and field.
    fn align(&self, other: &Self) -> Result<(Self, Self)> {
        let field = self.field.join(other.field)?;
        let (a, b) = (self.embed(field)?, other.embed(field)?);
        if a.registry == b.registry {
            let reg = a.registry.clone();
            return Ok((a, b.remap(&reg)?));
        }
        if a.registry.is_plain() && b.registry.is_plain() {
            let keys = a.registry.keys.iter().chain(&b.registry.keys).cloned().collect();
            let reg = Registry::new(keys, DEFAULT_MAX_REGISTRY)?;
            return Ok((a.remap(&reg)?, b.remap(&reg)?));
        }
        Err(Error::IncompatibleRegistry("registries differ and are not both plain".into()))
    }

    pub fn combine(op: CombineOp, a: &Self, b: &Self) -> Result<Self> {
        let (mut a, b) = a.align(b)?;
        for (m, c) in b.terms {
            a.add_term(m, if op == CombineOp::Sub { c.neg() } else { c });
        }
        Ok(a)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::combine(CombineOp::Add, self, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::combine(CombineOp::Sub, self, other)
    }

    pub fn scale(&self, c: &CyclotomicInt) -> Result<Self> {
        let field = self.field.join(c.field())?;
        let c = c.embed(field)?;
        let mut out = Self::zero(&self.registry, field);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), &x.embed(field)? * &c);
        }
        Ok(out)
    }

    pub fn scale_int(&self, n: &BigInt) -> Self {
        let mut out = Self::zero(&self.registry, self.field);
        if n.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c.scale(n))).collect();
        out
    }

    /// Exact division by an integer; fails if any coefficient is not a multiple.
    pub fn div_exact(&self, n: &BigInt) -> Result<Self> {
        let mut out = Self::zero(&self.registry, self.field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.div_exact(n)?);
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let (a, b) = self.align(other)?;
        let mut out = Self::zero(&a.registry, a.field);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m: Monomial = ma.iter().zip(mb.iter()).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::constant(&self.registry, CyclotomicInt::one(self.field));
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Degree if every term has the same total degree; `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d: u32 = m.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(x) if x != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Value with every variable set to 1.
    pub fn eval_ones(&self) -> CyclotomicInt {
        let mut s = CyclotomicInt::zero(self.field);
        for c in self.terms.values() {
            s.add_assign_ref(c);
        }
        s
    }

    /// Simultaneous substitution `key -> image`. Every variable of the
    /// registry needs an image; images must share one registry.
    pub fn substitute(&self, map: &HashMap<VarKey, MultiPoly>) -> Result<Self> {
        let sub = Substitution::from_map(&self.registry, map)?;
        self.apply(&sub)
    }

    /// Applies a prepared substitution built for this polynomial's registry.
    pub fn apply(&self, sub: &Substitution) -> Result<Self> {
        if *sub.source != *self.registry {
            return Err(Error::IncompatibleRegistry("substitution built for another registry".into()));
        }
        let field = self.field.join(sub.field)?;
        let images: Vec<MultiPoly> = sub.images.iter().map(|p| p.embed(field)).collect::<Result<_>>()?;
        let mut powers: HashMap<(usize, u32), Vec<(Monomial, CyclotomicInt)>> = HashMap::new();
        let mut out = MultiPoly::zero(&sub.target, field);
        let width = sub.target.len();
        for (m, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &k) in m.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = powers.entry((i, k)) {
                    e.insert(images[i].pow(k)?.terms.into_iter().collect());
                }
                factors.push((i, k));
            }
            let mut partial: HashMap<Monomial, CyclotomicInt> =
                HashMap::from([(vec![0u32; width].into_boxed_slice(), c.embed(field)?)]);
            for f in &factors {
                let list = &powers[f];
                let mut next: HashMap<Monomial, CyclotomicInt> = HashMap::with_capacity(partial.len() * list.len());
                for (pm, pc) in &partial {
                    for (lm, lc) in list {
                        let m: Monomial = pm.iter().zip(lm.iter()).map(|(x, y)| x + y).collect();
                        let prod = if lc.as_integer().is_some_and(|n| n.is_one()) { pc.clone() } else { pc * lc };
                        use std::collections::hash_map::Entry;
                        match next.entry(m) {
                            Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&prod),
                            Entry::Vacant(e) => {
                                e.insert(prod);
                            }
                        }
                    }
                }
                next.retain(|_, v| !v.is_zero());
                partial = next;
            }
            for (m, c) in partial {
                out.add_term(m, c);
            }
        }
        Ok(out)
    }

    /// Canonical text, integer coefficients only.
    pub fn render(&self) -> Result<String> {
        let terms = self.sorted_terms();
        if terms.is_empty() {
            return Ok("0".into());
        }
        let mut s = String::new();
        for (i, (m, c)) in terms.into_iter().enumerate() {
            let n = c.as_integer().ok_or_else(|| Error::NonIntegerCoefficient(c.to_string()))?;
            let neg = n.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mag = n.abs();
            let mut parts: Vec<String> = Vec::new();
            if !mag.is_one() || m.iter().all(|&x| x == 0) {
                parts.push(mag.to_string());
            }
            for (j, &x) in m.iter().enumerate() {
                match x {
                    0 => {}
                    1 => parts.push(self.registry.keys[j].to_string()),
                    _ => parts.push(format!("{}^{x}", self.registry.keys[j])),
                }
            }
            s.push_str(&parts.join("*"));
        }
        Ok(s)
    }

    /// Parses the canonical text grammar against a registry.
    pub fn parse(text: &str, registry: &Arc<Registry>, field: CycField) -> Result<Self> {
        Parser { src: text.as_bytes(), pos: 0, registry, field }.polynomial()
    }

    /// `[{"exps": [..], "coeff": n}, ..]`, sorted like [`MultiPoly::render`].
    pub fn to_json(&self) -> Result<Value> {
        let mut out = Vec::new();
        for (m, c) in self.sorted_terms() {
            let n = c.as_integer().ok_or_else(|| Error::NonIntegerCoefficient(c.to_string()))?;
            let coeff = match n.to_i64() {
                Some(x) => json!(x),
                None => json!(n.to_string()),
            };
            out.push(json!({ "exps": m.to_vec(), "coeff": coeff }));
        }
        Ok(Value::Array(out))
    }

    pub fn from_json(value: &Value, registry: &Arc<Registry>, field: CycField) -> Result<Self> {
        let bad = |msg: &str| Error::Parse { pos: 0, msg: msg.to_string() };
        let arr = value.as_array().ok_or_else(|| bad("expected a term array"))?;
        let mut p = Self::zero(registry, field);
        for t in arr {
            let exps: Vec<u32> = t
                .get("exps")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term needs \"exps\""))?
                .iter()
                .map(|x| x.as_u64().map(|x| x as u32).ok_or_else(|| bad("exponent must be a natural number")))
                .collect::<Result<_>>()?;
            if exps.len() != registry.len() {
                return Err(Error::LengthMismatch { expected: registry.len(), found: exps.len() });
            }
            let coeff: BigInt = match t.get("coeff") {
                Some(Value::Number(n)) => n.as_i64().map(BigInt::from).ok_or_else(|| bad("coefficient must be an integer"))?,
                Some(Value::String(s)) => s.parse().map_err(|_| bad("coefficient must be an integer"))?,
                _ => return Err(bad("term needs \"coeff\"")),
            };
            p.add_term(exps.into_boxed_slice(), CyclotomicInt::from_integer(field, coeff));
        }
        Ok(p)
    }

    /// First term (in render order) at which `self` and `other` differ.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        let diff = self.sub(other).ok()?;
        let (m, _) = diff.sorted_terms().into_iter().next()?;
        let name = monomial_name(&diff.registry, m);
        let coeff = |p: &MultiPoly| p.remap(&diff.registry).map(|q| q.coefficient(m).to_string()).unwrap_or_default();
        Some(format!("{name}: {} vs {}", coeff(self), coeff(other)))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.render() {
            Ok(s) => f.write_str(&s),
            Err(_) => {
                // non-rational coefficients: diagnostic form
                let mut first = true;
                for (m, c) in self.sorted_terms() {
                    if !first {
                        f.write_str(" + ")?;
                    }
                    first = false;
                    write!(f, "({c})*{}", monomial_name(&self.registry, m))?;
                }
                if first {
                    f.write_str("0")?;
                }
                Ok(())
            }
        }
    }
}

fn monomial_name(reg: &Registry, m: &[u32]) -> String {
    let parts: Vec<String> = m
        .iter()
        .enumerate()
        .filter(|(_, &x)| x > 0)
        .map(|(j, &x)| if x == 1 { reg.keys[j].to_string() } else { format!("{}^{x}", reg.keys[j]) })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// A prepared substitution: one image per source variable, all in `target`.
#[derive(Debug, Clone)]
pub struct Substitution {
    source: Arc<Registry>,
    target: Arc<Registry>,
    field: CycField,
    images: Vec<MultiPoly>,
}

impl Substitution {
    pub fn from_map(source: &Arc<Registry>, map: &HashMap<VarKey, MultiPoly>) -> Result<Self> {
        let mut images = Vec::with_capacity(source.len());
        for key in &source.keys {
            images.push(map.get(key).cloned().ok_or_else(|| Error::PartialSubstitution(key.to_string()))?);
        }
        Self::from_images(source, images)
    }

    /// `images[i]` is the image of `source.keys()[i]`.
    pub fn from_images(source: &Arc<Registry>, images: Vec<MultiPoly>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(Error::PartialSubstitution(format!("{} images for {} variables", images.len(), source.len())));
        }
        let Some(first) = images.first() else {
            return Ok(Substitution {
                source: source.clone(),
                target: source.clone(),
                field: CycField::rational(),
                images,
            });
        };
        let target = first.registry.clone();
        let mut field = first.field;
        for im in &images {
            if *im.registry != *target {
                return Err(Error::IncompatibleRegistry("substitution images use different registries".into()));
            }
            field = field.join(im.field)?;
        }
        let images = images.into_iter().map(|p| p.embed(field)).collect::<Result<_>>()?;
        Ok(Substitution { source: source.clone(), target, field, images })
    }

    pub fn source(&self) -> &Arc<Registry> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Registry> {
        &self.target
    }

    pub fn field(&self) -> CycField {
        self.field
    }

    pub fn images(&self) -> &[MultiPoly] {
        &self.images
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    registry: &'a Arc<Registry>,
    field: CycField,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_raw(&mut self, b: u8) -> Result<()> {
        if self.src.get(self.pos) == Some(&b) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", b as char))
        }
    }

    fn number_raw(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn small_raw(&mut self) -> Result<u64> {
        let n = self.number_raw()?;
        match n.to_u64() {
            Some(x) => Ok(x),
            None => self.err("index too large"),
        }
    }

    fn tuple_raw(&mut self) -> Result<Vec<Elem>> {
        self.expect_raw(b'(')?;
        let mut t = vec![self.small_raw()? as Elem];
        while self.src.get(self.pos) == Some(&b',') {
            self.pos += 1;
            t.push(self.small_raw()? as Elem);
        }
        self.expect_raw(b')')?;
        Ok(t)
    }

    fn variable(&mut self) -> Result<VarKey> {
        let tag = match self.src[self.pos] {
            b'X' => Tag::X,
            b'Y' => Tag::Y,
            _ => return self.err("expected a variable"),
        };
        self.pos += 1;
        if self.src.get(self.pos) != Some(&b'_') {
            return Ok(VarKey::Plain(tag));
        }
        self.pos += 1;
        if self.src.get(self.pos) == Some(&b'(') {
            if tag != Tag::X {
                return self.err("column-tuple variables are named X");
            }
            return Ok(VarKey::ColumnTuple(self.tuple_raw()?));
        }
        let pos = self.small_raw()? as usize;
        if self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            if tag != Tag::X {
                return self.err("positional-tuple variables are named X");
            }
            return Ok(VarKey::PositionalTuple { pos, tuple: self.tuple_raw()? });
        }
        Ok(VarKey::Positional { tag, pos })
    }

    fn term(&mut self) -> Result<(Vec<u32>, BigInt)> {
        let mut exps = vec![0u32; self.registry.len()];
        let mut coeff = BigInt::one();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_digit() => coeff *= self.number_raw()?,
                Some(b'X') | Some(b'Y') => {
                    let start = self.pos;
                    let key = self.variable()?;
                    let Some(i) = self.registry.index_of(&key) else {
                        self.pos = start;
                        return self.err(format!("variable {key} is not in the registry"));
                    };
                    let k = if self.eat(b'^') {
                        self.skip_ws();
                        self.small_raw()? as u32
                    } else {
                        1
                    };
                    exps[i] += k;
                }
                _ => return self.err("expected a coefficient or variable"),
            }
            if !self.eat(b'*') {
                return Ok((exps, coeff));
            }
        }
    }

    fn polynomial(&mut self) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(self.registry, self.field);
        let mut negate = self.eat(b'-');
        loop {
            let (exps, c) = self.term()?;
            let c = if negate { -c } else { c };
            p.add_term(exps.into_boxed_slice(), CyclotomicInt::from_integer(self.field, c));
            match self.peek() {
                None => return Ok(p),
                Some(b'+') => {
                    self.pos += 1;
                    negate = false;
                }
                Some(b'-') => {
                    self.pos += 1;
                    negate = true;
                }
                Some(_) => return self.err("expected '+' or '-'"),
            }
        }
    }
}
