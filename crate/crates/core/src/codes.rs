//! Linear codes over Galois rings, stored as explicit sorted word sets.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois_ring::{Elem, GaloisRing, RingElement, RingSpec};
use crate::Limits;

/// A vector of `R^N`, entries given as element indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codeword {
    ring: GaloisRing,
    entries: Vec<Elem>,
}

impl Codeword {
    pub fn new(ring: &GaloisRing, entries: Vec<Elem>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Invalid("codewords need length >= 1".into()));
        }
        for &x in &entries {
            ring.check_index(x as u64)?;
        }
        Ok(Codeword { ring: ring.clone(), entries })
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// 1-based positions of nonzero entries.
    pub fn support(&self) -> BTreeSet<usize> {
        self.entries.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, _)| i + 1).collect()
    }
}

/// `<u, v> = sum_j u_j v_j`.
pub fn pairing(u: &Codeword, v: &Codeword) -> Result<RingElement> {
    u.ring.check_same(&v.ring)?;
    if u.len() != v.len() {
        return Err(Error::LengthMismatch { expected: u.len(), found: v.len() });
    }
    let x = dot(&u.ring, &u.entries, &v.entries);
    u.ring.element_from_index(x as u64)
}

#[inline]
pub(crate) fn dot(ring: &GaloisRing, u: &[Elem], v: &[Elem]) -> Elem {
    u.iter().zip(v).fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(a, b)))
}

/// Union of supports of an m-tuple of words, possibly over different rings.
pub fn support(words: &[Codeword]) -> Result<BTreeSet<usize>> {
    let n = words.first().map_or(0, Codeword::len);
    let mut s = BTreeSet::new();
    for w in words {
        if w.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: w.len() });
        }
        s.extend(w.support());
    }
    Ok(s)
}

/// Number of nonzero columns of the matrix with the given rows.
pub fn effective_length(words: &[Codeword]) -> Result<usize> {
    support(words).map(|s| s.len())
}

/// A submodule of `R^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    ring: GaloisRing,
    length: usize,
    generators: Vec<Vec<Elem>>,
    words: Vec<Vec<Elem>>,
}

impl LinearCode {
    /// Span of the given rows.
    pub fn from_generators(ring: &GaloisRing, length: usize, rows: Vec<Vec<Elem>>, limits: &Limits) -> Result<Self> {
        if length == 0 {
            return Err(Error::Invalid("code length must be >= 1".into()));
        }
        for row in &rows {
            if row.len() != length {
                return Err(Error::LengthMismatch { expected: length, found: row.len() });
            }
            for &x in row {
                ring.check_index(x as u64)?;
            }
        }
        let words = span(ring, length, &rows, limits)?;
        Ok(LinearCode { ring: ring.clone(), length, generators: rows, words })
    }

    /// The zero code of length `length`.
    pub fn zero(ring: &GaloisRing, length: usize) -> Self {
        LinearCode { ring: ring.clone(), length, generators: vec![], words: vec![vec![0; length]] }
    }

    /// All of `R^N`.
    pub fn full(ring: &GaloisRing, length: usize, limits: &Limits) -> Result<Self> {
        let rows = (0..length)
            .map(|i| {
                let mut r = vec![0; length];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_generators(ring, length, rows, limits)
    }

    /// Builds a code from an explicit word set, verifying it is a submodule and
    /// choosing a greedy generating set.
    pub fn from_words(ring: &GaloisRing, length: usize, mut words: Vec<Vec<Elem>>, limits: &Limits) -> Result<Self> {
        words.sort();
        words.dedup();
        check_cap("code word set", words.len() as u128, limits.max_words as u128)?;
        let generators = greedy_generators(ring, length, &words, limits)?;
        let code = LinearCode { ring: ring.clone(), length, generators, words };
        code.check_closed()?;
        Ok(code)
    }

    pub fn ring(&self) -> &GaloisRing {
        &self.ring
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn generators(&self) -> &[Vec<Elem>] {
        &self.generators
    }

    /// Canonically sorted codewords.
    pub fn words(&self) -> &[Vec<Elem>] {
        &self.words
    }

    pub fn cardinality(&self) -> u64 {
        self.words.len() as u64
    }

    /// `log_q |C|` over a field; `None` over rings with `e > 1`.
    pub fn dimension(&self) -> Option<usize> {
        if !self.ring.is_field() {
            return None;
        }
        let q = self.ring.cardinality();
        let mut n = self.cardinality();
        let mut k = 0;
        while n > 1 {
            debug_assert_eq!(n % q, 0);
            n /= q;
            k += 1;
        }
        Some(k)
    }

    pub fn contains(&self, word: &[Elem]) -> bool {
        self.words.binary_search_by(|w| w.as_slice().cmp(word)).is_ok()
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.words.iter().all(|w| other.contains(w))
    }

    pub fn codeword(&self, i: usize) -> Codeword {
        Codeword { ring: self.ring.clone(), entries: self.words[i].clone() }
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        self.ring.check_same(&other.ring)?;
        if self.length != other.length {
            return Err(Error::LengthMismatch { expected: self.length, found: other.length });
        }
        Ok(())
    }

    /// Verifies closure under addition of generators and scalar multiplication,
    /// which together with `0 in C` is closure under the module operations.
    pub fn check_closed(&self) -> Result<()> {
        if !self.contains(&vec![0; self.length]) {
            return Err(Error::NotLinear("zero word missing".into()));
        }
        let n = self.ring.cardinality();
        let total = self.ring.cardinality().checked_pow(self.length as u32);
        if let Some(total) = total {
            if total % self.cardinality() != 0 {
                return Err(Error::NotLinear(format!("|C| = {} does not divide {total}", self.cardinality())));
            }
        }
        let mut buf = vec![0; self.length];
        for w in &self.words {
            for g in &self.generators {
                for j in 0..self.length {
                    buf[j] = self.ring.add(w[j], g[j]);
                }
                if !self.contains(&buf) {
                    return Err(Error::NotLinear(format!("{w:?} + {g:?} escapes the code")));
                }
            }
            for a in 0..n as Elem {
                for j in 0..self.length {
                    buf[j] = self.ring.mul(a, w[j]);
                }
                if !self.contains(&buf) {
                    return Err(Error::NotLinear(format!("{a} * {w:?} escapes the code")));
                }
            }
        }
        Ok(())
    }

    /// `C^perp`, by scanning all of `R^N` against the generators.
    pub fn dual(&self, limits: &Limits) -> Result<LinearCode> {
        let q = self.ring.cardinality() as u128;
        let total = (0..self.length).try_fold(1u128, |acc, _| acc.checked_mul(q)).unwrap_or(u128::MAX);
        check_cap("dual scan |R|^N", total, limits.max_scan as u128)?;
        let mut words = Vec::new();
        let mut v = vec![0 as Elem; self.length];
        loop {
            if self.generators.iter().all(|g| dot(&self.ring, g, &v) == 0) {
                words.push(v.clone());
                check_cap("dual word set", words.len() as u128, limits.max_words as u128)?;
            }
            if !odometer(&mut v, q as Elem) {
                break;
            }
        }
        // words come out in lexicographic order of the reversed odometer
        words.sort();
        let generators = greedy_generators(&self.ring, self.length, &words, limits)?;
        Ok(LinearCode { ring: self.ring.clone(), length: self.length, generators, words })
    }

    pub fn intersection(&self, other: &LinearCode, limits: &Limits) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let words: Vec<_> = self.words.iter().filter(|w| other.contains(w)).cloned().collect();
        let generators = greedy_generators(&self.ring, self.length, &words, limits)?;
        Ok(LinearCode { ring: self.ring.clone(), length: self.length, generators, words })
    }

    /// The code spanned by both.
    pub fn join(&self, other: &LinearCode, limits: &Limits) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let rows = self.generators.iter().chain(&other.generators).cloned().collect();
        Self::from_generators(&self.ring, self.length, rows, limits)
    }

    /// 1-based support of the whole code.
    pub fn support(&self) -> BTreeSet<usize> {
        (1..=self.length).filter(|&j| self.words.iter().any(|w| w[j - 1] != 0)).collect()
    }

    /// Every `r`-dimensional subspace, each listed once. Field case only.
    pub fn subcodes_of_dim(&self, r: usize, limits: &Limits) -> Result<Vec<LinearCode>> {
        let k = self.dimension().ok_or(Error::NotAField)?;
        if r > k {
            return Err(Error::DimensionOutOfRange { r, max: k });
        }
        if r == 0 {
            return Ok(vec![LinearCode::zero(&self.ring, self.length)]);
        }
        let nonzero: Vec<&Vec<Elem>> = self.words.iter().filter(|w| w.iter().any(|&x| x != 0)).collect();
        let estimate = binomial_u128(nonzero.len() as u128, r as u128);
        check_cap("subspace search tuples", estimate, limits.max_tuples as u128)?;

        let mut seen: HashSet<Vec<Vec<Elem>>> = HashSet::new();
        let mut out = Vec::new();
        let mut chosen: Vec<usize> = Vec::with_capacity(r);
        let mut spans: Vec<Vec<Vec<Elem>>> = vec![vec![vec![0; self.length]]];
        // depth-first over increasing index tuples of independent words
        #[allow(clippy::too_many_arguments)]
        fn rec(
            code: &LinearCode,
            nonzero: &[&Vec<Elem>],
            r: usize,
            start: usize,
            chosen: &mut Vec<usize>,
            spans: &mut Vec<Vec<Vec<Elem>>>,
            seen: &mut HashSet<Vec<Vec<Elem>>>,
            out: &mut Vec<LinearCode>,
        ) {
            if chosen.len() == r {
                let words = spans.last().unwrap();
                if seen.insert(words.clone()) {
                    out.push(LinearCode {
                        ring: code.ring.clone(),
                        length: code.length,
                        generators: chosen.iter().map(|&i| nonzero[i].clone()).collect(),
                        words: words.clone(),
                    });
                }
                return;
            }
            for i in start..nonzero.len() {
                let current = spans.last().unwrap();
                if current.binary_search(nonzero[i]).is_ok() {
                    continue;
                }
                let next = extend_span(&code.ring, current, nonzero[i]);
                spans.push(next);
                chosen.push(i);
                rec(code, nonzero, r, i + 1, chosen, spans, seen, out);
                chosen.pop();
                spans.pop();
            }
        }
        rec(self, &nonzero, r, 0, &mut chosen, &mut spans, &mut seen, &mut out);
        out.sort_by(|a, b| a.words.cmp(&b.words));
        Ok(out)
    }

    /// Built-in binary codes `C1`..`C5`, `D1`, `D2`, given by generator rows.
    pub fn named(name: &str, limits: &Limits) -> Result<Self> {
        let rows: &[&str] = match name.to_ascii_uppercase().as_str() {
            "C1" => &["110000", "101000", "111111"],
            "C2" => &["111000", "111111"],
            "C3" => &["100100", "011000", "000111"],
            "C4" => &["110000", "111111"],
            "C5" => &["110000", "001100", "111111"],
            "D1" => &[
                "100000001100",
                "010010101001",
                "001000101010",
                "000100000111",
                "000001100100",
                "000000011100",
            ],
            "D2" => &[
                "100010100010",
                "010000110010",
                "001010000000",
                "000100000101",
                "000001110001",
                "000000001011",
            ],
            _ => return Err(Error::Invalid(format!("unknown named code {name:?}"))),
        };
        let ring = GaloisRing::named("F2")?;
        let rows: Vec<Vec<Elem>> = rows.iter().map(|r| r.bytes().map(|b| (b - b'0') as Elem).collect()).collect();
        Self::from_generators(&ring, rows[0].len(), rows, limits)
    }

    /// Restriction to the given 0-based coordinates (puncturing the rest).
    pub fn punctured(&self, keep: &[usize], limits: &Limits) -> Result<Self> {
        let rows = self.generators.iter().map(|g| keep.iter().map(|&j| g[j]).collect()).collect();
        Self::from_generators(&self.ring, keep.len(), rows, limits)
    }

    pub fn to_file(&self) -> CodeFile {
        CodeFile {
            ring: Some(self.ring.spec()),
            length: Some(self.length),
            generators: Some(self.generators.clone()),
            named: None,
        }
    }
}

impl fmt::Display for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} code, N={}, |C|={}]", self.ring, self.length, self.cardinality())
    }
}

/// On-disk code description.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ring: Option<RingSpec>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub length: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub generators: Option<Vec<Vec<Elem>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub named: Option<String>,
}

impl CodeFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("code files serialize")
    }

    pub fn build(&self, limits: &Limits) -> Result<LinearCode> {
        if let Some(name) = &self.named {
            return LinearCode::named(name, limits);
        }
        let spec = self.ring.as_ref().ok_or_else(|| Error::Invalid("code file needs \"ring\" or \"named\"".into()))?;
        let ring = GaloisRing::from_spec(spec)?;
        let gens = self.generators.clone().unwrap_or_default();
        let length = match (self.length, gens.first()) {
            (Some(n), _) => n,
            (None, Some(g)) => g.len(),
            (None, None) => return Err(Error::Invalid("code file needs \"length\"".into())),
        };
        LinearCode::from_generators(&ring, length, gens, limits)
    }
}

/// An ordered tuple of codes of one common length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeTuple {
    codes: Vec<LinearCode>,
}

impl CodeTuple {
    pub fn new(codes: Vec<LinearCode>) -> Result<Self> {
        let first = codes.first().ok_or_else(|| Error::Invalid("a code tuple needs m >= 1".into()))?;
        let n = first.length;
        for c in &codes {
            if c.length != n {
                return Err(Error::LengthMismatch { expected: n, found: c.length });
            }
        }
        Ok(CodeTuple { codes })
    }

    pub fn repeat(code: &LinearCode, m: usize) -> Result<Self> {
        Self::new(vec![code.clone(); m])
    }

    pub fn codes(&self) -> &[LinearCode] {
        &self.codes
    }

    pub fn m(&self) -> usize {
        self.codes.len()
    }

    pub fn length(&self) -> usize {
        self.codes[0].length
    }

    pub fn rings(&self) -> Vec<GaloisRing> {
        self.codes.iter().map(|c| c.ring.clone()).collect()
    }

    /// `prod |C_i|`.
    pub fn tuple_count(&self) -> u128 {
        crate::util::product_u128(self.codes.iter().map(|c| c.cardinality() as u128))
    }

    pub fn duals(&self, limits: &Limits) -> Result<CodeTuple> {
        Ok(CodeTuple { codes: self.codes.iter().map(|c| c.dual(limits)).collect::<Result<_>>()? })
    }

    /// The single common ring, when all codes share one.
    pub fn common_ring(&self) -> Result<&GaloisRing> {
        let r = &self.codes[0].ring;
        for c in &self.codes[1..] {
            r.check_same(&c.ring)?;
        }
        Ok(r)
    }
}

impl fmt::Display for CodeTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.codes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

pub(crate) fn check_cap(what: &'static str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        return Err(Error::CapExceeded { what, needed, cap });
    }
    Ok(())
}

/// Advances `v` as a little-endian base-`q` counter; false on wrap-around.
pub(crate) fn odometer(v: &mut [Elem], q: Elem) -> bool {
    for x in v.iter_mut() {
        *x += 1;
        if *x < q {
            return true;
        }
        *x = 0;
    }
    false
}

/// Sorted word set of `span(current, g)`, assuming `current` is a submodule.
fn extend_span(ring: &GaloisRing, current: &[Vec<Elem>], g: &[Elem]) -> Vec<Vec<Elem>> {
    let q = ring.cardinality() as Elem;
    let mut set: HashSet<Vec<Elem>> = HashSet::with_capacity(current.len() * q as usize);
    for a in 0..q {
        let ag: Vec<Elem> = g.iter().map(|&x| ring.mul(a, x)).collect();
        for w in current {
            set.insert(w.iter().zip(&ag).map(|(&x, &y)| ring.add(x, y)).collect());
        }
    }
    let mut out: Vec<_> = set.into_iter().collect();
    out.sort();
    out
}

/// Every `R`-linear combination of `rows`, sorted.
fn span(ring: &GaloisRing, length: usize, rows: &[Vec<Elem>], limits: &Limits) -> Result<Vec<Vec<Elem>>> {
    let mut words = vec![vec![0; length]];
    for g in rows {
        if words.binary_search(g).is_ok() {
            continue;
        }
        words = extend_span(ring, &words, g);
        check_cap("code word set", words.len() as u128, limits.max_words as u128)?;
    }
    Ok(words)
}

/// Walks `words` in order, keeping each word that grows the span, until the
/// span reaches `|words|`.
fn greedy_generators(ring: &GaloisRing, length: usize, words: &[Vec<Elem>], limits: &Limits) -> Result<Vec<Vec<Elem>>> {
    let mut gens = Vec::new();
    let mut current = vec![vec![0; length]];
    for w in words {
        if current.len() == words.len() {
            break;
        }
        if current.binary_search(w).is_ok() {
            continue;
        }
        current = extend_span(ring, &current, w);
        check_cap("code word set", current.len() as u128, limits.max_words as u128)?;
        gens.push(w.clone());
    }
    if current.len() != words.len() {
        return Err(Error::NotLinear("word set is not closed under the module operations".into()));
    }
    Ok(gens)
}

fn binomial_u128(n: u128, k: u128) -> u128 {
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}
