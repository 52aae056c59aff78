//! Weight enumerators of codes and code tuples, by exhaustive enumeration.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::codes::{check_cap, CodeTuple, LinearCode};
use crate::cyclotomic::CycField;
use crate::error::{Error, Result};
use crate::galois_ring::Elem;
use crate::polynomials::{Monomial, MultiPoly, Registry, Tag, VarKey};
use crate::util::big_pow;
use crate::Limits;

/// Which enumerator; `m` is the tuple size, `r` the subspace dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EnumeratorKind {
    Hamming(usize),
    Complete(usize),
    Support(usize),
    Exact(usize),
    RSupport(usize),
}

impl fmt::Display for EnumeratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumeratorKind::Hamming(m) => write!(f, "hamming(m={m})"),
            EnumeratorKind::Complete(m) => write!(f, "complete(m={m})"),
            EnumeratorKind::Support(m) => write!(f, "support(m={m})"),
            EnumeratorKind::Exact(m) => write!(f, "exact(m={m})"),
            EnumeratorKind::RSupport(r) => write!(f, "rsupport(r={r})"),
        }
    }
}

type Mask = Vec<u64>;

fn support_mask(word: &[Elem]) -> Mask {
    let mut m = vec![0u64; word.len().div_ceil(64).max(1)];
    for (j, &x) in word.iter().enumerate() {
        if x != 0 {
            m[j / 64] |= 1 << (j % 64);
        }
    }
    m
}

fn check_tuples(tuple: &CodeTuple, limits: &Limits) -> Result<()> {
    check_cap("codeword tuples", tuple.tuple_count(), limits.max_tuples as u128)
}

/// Multiset of union-support masks over all tuples.
fn union_masks(tuple: &CodeTuple) -> HashMap<Mask, u128> {
    let mut acc: HashMap<Mask, u128> = HashMap::from([(vec![0u64; tuple.length().div_ceil(64).max(1)], 1)]);
    for code in tuple.codes() {
        let mut counts: HashMap<Mask, u128> = HashMap::new();
        for w in code.words() {
            *counts.entry(support_mask(w)).or_default() += 1;
        }
        let mut next: HashMap<Mask, u128> = HashMap::new();
        for (a, ca) in &acc {
            for (b, cb) in &counts {
                let m: Mask = a.iter().zip(b).map(|(x, y)| x | y).collect();
                *next.entry(m).or_default() += ca * cb;
            }
        }
        acc = next;
    }
    acc
}

/// `W^[m]`: each tuple contributes `X^(N-r) Y^r`, `r` its effective length.
pub fn mtuple_hamming_we(tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    check_tuples(tuple, limits)?;
    let n = tuple.length() as u32;
    let reg = Registry::plain();
    let terms = union_masks(tuple).into_iter().map(|(mask, c)| {
        let r: u32 = mask.iter().map(|x| x.count_ones()).sum();
        (vec![n - r, r].into_boxed_slice(), BigInt::from(c))
    });
    Ok(MultiPoly::from_integer_terms(&reg, CycField::rational(), terms))
}

/// Hamming enumerator of a list of codes (convenience for [`mtuple_hamming_we`]).
pub fn hamming_we(codes: &[LinearCode], limits: &Limits) -> Result<MultiPoly> {
    mtuple_hamming_we(&CodeTuple::new(codes.to_vec())?, limits)
}

/// `SE^[m]` in `X_1..X_N, Y_1..Y_N`; `Y_P` marks positions in the union support.
pub fn support_enum(tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    check_tuples(tuple, limits)?;
    let n = tuple.length();
    let reg = Registry::positional(n, limits.max_registry)?;
    let terms = union_masks(tuple).into_iter().map(|(mask, c)| {
        let mut e = vec![0u32; 2 * n];
        for j in 0..n {
            let inside = mask[j / 64] >> (j % 64) & 1 == 1;
            e[if inside { n + j } else { j }] = 1;
        }
        (e.into_boxed_slice(), BigInt::from(c))
    });
    Ok(MultiPoly::from_integer_terms(&reg, CycField::rational(), terms))
}

/// `SE^[m]_C` for `m` copies of one code.
pub fn mtuple_support_enum(code: &LinearCode, m: usize, limits: &Limits) -> Result<MultiPoly> {
    support_enum(&CodeTuple::repeat(code, m)?, limits)
}

/// Column indices of every tuple, first code most significant, with multiplicities.
/// The last code is streamed into `sink` rather than stored.
fn for_each_column_vector(tuple: &CodeTuple, mut sink: impl FnMut(&[u32], u128)) {
    let codes = tuple.codes();
    let n = tuple.length();
    let mut acc: HashMap<Vec<u32>, u128> = HashMap::from([(vec![0u32; n], 1)]);
    let (last, init) = codes.split_last().expect("tuple is nonempty");
    for code in init {
        let q = code.ring().cardinality() as u32;
        let mut next: HashMap<Vec<u32>, u128> = HashMap::with_capacity(acc.len() * code.words().len());
        for (cols, c) in &acc {
            for w in code.words() {
                let v: Vec<u32> = cols.iter().zip(w).map(|(&x, &y)| x * q + y).collect();
                *next.entry(v).or_default() += c;
            }
        }
        acc = next;
    }
    let q = last.ring().cardinality() as u32;
    let mut buf = vec![0u32; n];
    for (cols, c) in &acc {
        for w in last.words() {
            for ((b, &x), &y) in buf.iter_mut().zip(cols).zip(w) {
                *b = x * q + y;
            }
            sink(&buf, *c);
        }
    }
}

fn cards(tuple: &CodeTuple) -> Vec<u64> {
    tuple.codes().iter().map(|c| c.ring().cardinality()).collect()
}

/// `CW^[m]` in the column-tuple variables `X_(a_1,..,a_m)`.
pub fn mtuple_complete_we(tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    check_tuples(tuple, limits)?;
    let reg = Registry::column_tuples(&cards(tuple), limits.max_registry)?;
    let width = reg.len();
    let mut counts: HashMap<Monomial, u128> = HashMap::new();
    for_each_column_vector(tuple, |cols, c| {
        let mut e = vec![0u32; width];
        for &x in cols {
            e[x as usize] += 1;
        }
        *counts.entry(e.into_boxed_slice()).or_default() += c;
    });
    Ok(MultiPoly::from_integer_terms(&reg, CycField::rational(), counts))
}

/// `EW^[m]` in the variables `X_P_(a_1,..,a_m)`.
pub fn exact_we(tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    check_tuples(tuple, limits)?;
    let cards = cards(tuple);
    let reg = Registry::positional_tuples(tuple.length(), &cards, limits.max_registry)?;
    let per_pos: usize = cards.iter().product::<u64>() as usize;
    let width = reg.len();
    let mut counts: HashMap<Monomial, u128> = HashMap::new();
    for_each_column_vector(tuple, |cols, c| {
        let mut e = vec![0u32; width];
        for (p, &x) in cols.iter().enumerate() {
            e[p * per_pos + x as usize] = 1;
        }
        *counts.entry(e.into_boxed_slice()).or_default() += c;
    });
    Ok(MultiPoly::from_integer_terms(&reg, CycField::rational(), counts))
}

fn support_size_poly(n: usize, subcodes: impl IntoIterator<Item = LinearCode>) -> MultiPoly {
    let mut counts: HashMap<Monomial, u64> = HashMap::new();
    for d in subcodes {
        let i = d.support().len() as u32;
        *counts.entry(vec![n as u32 - i, i].into_boxed_slice()).or_default() += 1;
    }
    MultiPoly::from_integer_terms(&Registry::plain(), CycField::rational(), counts)
}

/// `W^(r)`: `X^(N-i) Y^i` for each `r`-dimensional subcode with support size `i`.
/// Zero when `r` exceeds the dimension.
pub fn rth_support_we(code: &LinearCode, r: usize, limits: &Limits) -> Result<MultiPoly> {
    match code.subcodes_of_dim(r, limits) {
        Ok(subs) => Ok(support_size_poly(code.length(), subs)),
        Err(Error::DimensionOutOfRange { .. }) => Ok(MultiPoly::zero(&Registry::plain(), CycField::rational())),
        Err(e) => Err(e),
    }
}

/// Which two-dimensional subcodes [`restricted_w2`] keeps.
#[derive(Debug, Clone)]
pub enum W2Constraint {
    /// `dim(D ∩ other) = 1`.
    IntersectDim1(LinearCode),
    /// `D` is spanned by a line of `a` and a different line of `b`:
    /// `D ∩ a` and `D ∩ b` are one-dimensional and `D ∩ a ∩ b = 0`.
    NotSubcodeOfEither(LinearCode, LinearCode),
}

/// Support enumerator of the two-dimensional subcodes of `container` meeting `constraint`.
pub fn restricted_w2(container: &LinearCode, constraint: &W2Constraint, limits: &Limits) -> Result<MultiPoly> {
    let q = container.ring().cardinality() as usize;
    let count_in = |d: &LinearCode, c: &LinearCode| d.words().iter().filter(|w| c.contains(w)).count();
    let count_in2 =
        |d: &LinearCode, a: &LinearCode, b: &LinearCode| d.words().iter().filter(|w| a.contains(w) && b.contains(w)).count();
    match constraint {
        W2Constraint::IntersectDim1(o) | W2Constraint::NotSubcodeOfEither(o, _) if o.length() != container.length() => {
            return Err(Error::LengthMismatch { expected: container.length(), found: o.length() })
        }
        W2Constraint::NotSubcodeOfEither(_, b) if b.length() != container.length() => {
            return Err(Error::LengthMismatch { expected: container.length(), found: b.length() })
        }
        _ => {}
    }
    let subs = container.subcodes_of_dim(2, limits)?;
    let kept = subs.into_iter().filter(|d| match constraint {
        W2Constraint::IntersectDim1(o) => count_in(d, o) == q,
        W2Constraint::NotSubcodeOfEither(a, b) => count_in(d, a) == q && count_in(d, b) == q && count_in2(d, a, b) == 1,
    });
    Ok(support_size_poly(container.length(), kept))
}

/// `[m]_r = prod_{i<r} (q^m - q^i)`.
pub fn bracket_count(q: u64, m: u32, r: u32) -> BigInt {
    (0..r).map(|i| big_pow(q, m) - big_pow(q, i)).product()
}

/// Dispatches on `kind`. `Support` and `RSupport` use the tuple as given; `RSupport` needs `m = 1`.
pub fn enumerate(kind: EnumeratorKind, tuple: &CodeTuple, limits: &Limits) -> Result<MultiPoly> {
    let m = tuple.m();
    let want = match kind {
        EnumeratorKind::Hamming(k) | EnumeratorKind::Complete(k) | EnumeratorKind::Support(k) | EnumeratorKind::Exact(k) => k,
        EnumeratorKind::RSupport(_) => 1,
    };
    if want != m {
        return Err(Error::Invalid(format!("{kind} needs {want} codes, got {m}")));
    }
    match kind {
        EnumeratorKind::Hamming(_) => mtuple_hamming_we(tuple, limits),
        EnumeratorKind::Complete(_) => mtuple_complete_we(tuple, limits),
        EnumeratorKind::Support(_) => support_enum(tuple, limits),
        EnumeratorKind::Exact(_) => exact_we(tuple, limits),
        EnumeratorKind::RSupport(r) => rth_support_we(&tuple.codes()[0], r, limits),
    }
}

fn is_zero_tuple(t: &[Elem]) -> bool {
    t.iter().all(|&x| x == 0)
}

fn plain_var(t: Tag) -> VarKey {
    VarKey::Plain(t)
}

/// Merges variables along the lattice `Exact -> {Complete, Support} -> Hamming`.
pub fn specialize(poly: &MultiPoly, from: EnumeratorKind, to: EnumeratorKind) -> Result<MultiPoly> {
    use EnumeratorKind::*;
    let illegal = || Error::IllegalSpecialization { from: from.to_string(), to: to.to_string() };
    let (mf, mt) = match (from, to) {
        (Exact(a), Complete(b) | Support(b) | Hamming(b)) | (Complete(a) | Support(a), Hamming(b)) => (a, b),
        _ if from == to => return Ok(poly.clone()),
        _ => return Err(illegal()),
    };
    if mf != mt {
        return Err(illegal());
    }
    let keys = poly.registry().keys();
    let field = poly.field();
    let one_step = |target: Arc<Registry>, image: &dyn Fn(&VarKey) -> Result<VarKey>| -> Result<MultiPoly> {
        let images = keys
            .iter()
            .map(|k| MultiPoly::var(&target, field, &image(k)?))
            .collect::<Result<Vec<_>>>()?;
        poly.apply(&crate::polynomials::Substitution::from_images(poly.registry(), images)?)
    };
    let wrong = |k: &VarKey| Error::IncompatibleRegistry(format!("{k} is not a {from} variable"));
    match (from, to) {
        (Exact(_), Complete(_)) => {
            let tuples: BTreeSet<Vec<Elem>> = keys
                .iter()
                .map(|k| match k {
                    VarKey::PositionalTuple { tuple, .. } => Ok(tuple.clone()),
                    _ => Err(wrong(k)),
                })
                .collect::<Result<_>>()?;
            let target = Registry::new(tuples.into_iter().map(VarKey::ColumnTuple).collect(), usize::MAX)?;
            one_step(target, &|k| match k {
                VarKey::PositionalTuple { tuple, .. } => Ok(VarKey::ColumnTuple(tuple.clone())),
                _ => Err(wrong(k)),
            })
        }
        (Exact(_), Support(_)) => {
            let mut n = 0;
            for k in keys {
                match k {
                    VarKey::PositionalTuple { pos, .. } => n = n.max(*pos),
                    _ => return Err(wrong(k)),
                }
            }
            one_step(Registry::positional(n, usize::MAX)?, &|k| match k {
                VarKey::PositionalTuple { pos, tuple } => {
                    let tag = if is_zero_tuple(tuple) { Tag::X } else { Tag::Y };
                    Ok(VarKey::Positional { tag, pos: *pos })
                }
                _ => Err(wrong(k)),
            })
        }
        (Complete(_), Hamming(_)) => one_step(Registry::plain(), &|k| match k {
            VarKey::ColumnTuple(t) => Ok(plain_var(if is_zero_tuple(t) { Tag::X } else { Tag::Y })),
            _ => Err(wrong(k)),
        }),
        (Support(_), Hamming(_)) => one_step(Registry::plain(), &|k| match k {
            VarKey::Positional { tag, .. } => Ok(plain_var(*tag)),
            _ => Err(wrong(k)),
        }),
        (Exact(m), Hamming(_)) => specialize(&specialize(poly, from, Complete(m))?, Complete(m), to),
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois_ring::GaloisRing;

    fn lim() -> Limits {
        Limits::default()
    }

    fn named(n: &str) -> LinearCode {
        LinearCode::named(n, &lim()).unwrap()
    }

    fn code(ring: &str, n: usize, rows: Vec<Vec<Elem>>) -> LinearCode {
        LinearCode::from_generators(&GaloisRing::named(ring).unwrap(), n, rows, &lim()).unwrap()
    }

    fn pair(a: &LinearCode, b: &LinearCode) -> CodeTuple {
        CodeTuple::new(vec![a.clone(), b.clone()]).unwrap()
    }

    fn render(p: &MultiPoly) -> String {
        p.render().unwrap()
    }

    /// Independent oracle: loop over explicit tuples and count nonzero columns.
    fn hamming_oracle(codes: &[LinearCode]) -> Vec<u64> {
        let n = codes[0].length();
        let mut dist = vec![0u64; n + 1];
        let mut idx = vec![0usize; codes.len()];
        'outer: loop {
            let r = (0..n).filter(|&j| codes.iter().zip(&idx).any(|(c, &i)| c.words()[i][j] != 0)).count();
            dist[r] += 1;
            for (k, c) in codes.iter().enumerate() {
                idx[k] += 1;
                if idx[k] < c.words().len() {
                    continue 'outer;
                }
                idx[k] = 0;
            }
            break;
        }
        dist
    }

    fn from_dist(dist: &[u64]) -> MultiPoly {
        let n = dist.len() as u32 - 1;
        MultiPoly::from_integer_terms(
            &Registry::plain(),
            CycField::rational(),
            dist.iter().enumerate().map(|(r, &c)| (vec![n - r as u32, r as u32].into_boxed_slice(), c)),
        )
    }

    #[test]
    fn pair_hamming_golden() {
        let w = mtuple_hamming_we(&pair(&named("C1"), &named("C2")), &lim()).unwrap();
        assert_eq!(render(&w), "X^6 + 3*X^4*Y^2 + 5*X^3*Y^3 + 6*X^2*Y^4 + 3*X*Y^5 + 14*Y^6");
        let d = mtuple_hamming_we(&pair(&named("C1").dual(&lim()).unwrap(), &named("C2").dual(&lim()).unwrap()), &lim()).unwrap();
        assert_eq!(render(&d), "X^6 + 12*X^4*Y^2 + 6*X^3*Y^3 + 39*X^2*Y^4 + 42*X*Y^5 + 28*Y^6");
    }

    #[test]
    fn d1_d2_golden() {
        let d1 = named("D1");
        let d2 = named("D2");
        let w1 = hamming_we(std::slice::from_ref(&d1), &lim()).unwrap();
        assert_eq!(
            render(&w1),
            "X^12 + X^10*Y^2 + 3*X^9*Y^3 + 6*X^8*Y^4 + 15*X^7*Y^5 + 14*X^6*Y^6 + 9*X^5*Y^7 + 9*X^4*Y^8 + 5*X^3*Y^9 + X^2*Y^10"
        );
        let w2 = hamming_we(std::slice::from_ref(&d2), &lim()).unwrap();
        assert_eq!(
            render(&w2),
            "X^12 + X^10*Y^2 + 3*X^9*Y^3 + 8*X^8*Y^4 + 11*X^7*Y^5 + 12*X^6*Y^6 + 17*X^5*Y^7 + 7*X^4*Y^8 + X^3*Y^9 + 3*X^2*Y^10"
        );
        let p1 = hamming_we(&[d1.clone(), d1], &lim()).unwrap();
        assert_eq!(
            render(&p1),
            "X^12 + 3*X^10*Y^2 + 9*X^9*Y^3 + 24*X^8*Y^4 + 75*X^7*Y^5 + 162*X^6*Y^6 + 399*X^5*Y^7 + 771*X^4*Y^8 + 957*X^3*Y^9 + 975*X^2*Y^10 + 576*X*Y^11 + 144*Y^12"
        );
        assert_eq!(p1, hamming_we(&[d2.clone(), d2], &lim()).unwrap());
        assert_ne!(w1, w2);
    }

    #[test]
    fn hamming_matches_tuple_loop() {
        for (a, b) in [("C1", "C2"), ("C3", "C4"), ("C5", "C5")] {
            let codes = [named(a), named(b)];
            assert_eq!(hamming_we(&codes, &lim()).unwrap(), from_dist(&hamming_oracle(&codes)));
        }
        let z4 = code("Z4", 3, vec![vec![1, 2, 3], vec![0, 2, 2]]);
        assert_eq!(hamming_we(&[z4.clone(), z4.clone()], &lim()).unwrap(), from_dist(&hamming_oracle(&[z4.clone(), z4])));
    }

    #[test]
    fn zero_code_is_x_to_the_n() {
        let z = LinearCode::zero(&GaloisRing::named("F3").unwrap(), 4);
        assert_eq!(render(&hamming_we(&[z], &lim()).unwrap()), "X^4");
    }

    #[test]
    fn complete_examples() {
        let rep = code("F2", 3, vec![vec![1, 1, 1]]);
        let cw = mtuple_complete_we(&CodeTuple::new(vec![rep]).unwrap(), &lim()).unwrap();
        assert_eq!(render(&cw), "X_(0)^3 + X_(1)^3");
        let z4 = code("Z4", 2, vec![vec![2, 2]]);
        let cw = mtuple_complete_we(&CodeTuple::new(vec![z4]).unwrap(), &lim()).unwrap();
        assert_eq!(render(&cw), "X_(0)^2 + X_(2)^2");
        let c = code("F2", 2, vec![vec![1, 1]]);
        let cw = mtuple_complete_we(&pair(&c, &c), &lim()).unwrap();
        assert_eq!(render(&cw), "X_(0,0)^2 + X_(0,1)^2 + X_(1,0)^2 + X_(1,1)^2");
    }

    #[test]
    fn support_examples() {
        let c = code("F2", 2, vec![vec![1, 1]]);
        assert_eq!(render(&mtuple_support_enum(&c, 1, &lim()).unwrap()), "X_1*X_2 + Y_1*Y_2");
        assert_eq!(render(&mtuple_support_enum(&c, 2, &lim()).unwrap()), "X_1*X_2 + 3*Y_1*Y_2");
        let z = LinearCode::zero(&GaloisRing::named("F2").unwrap(), 2);
        assert_eq!(render(&mtuple_support_enum(&z, 1, &lim()).unwrap()), "X_1*X_2");
    }

    #[test]
    fn exact_examples() {
        let c = code("F2", 2, vec![vec![1, 1]]);
        let t = CodeTuple::new(vec![c.clone()]).unwrap();
        assert_eq!(render(&exact_we(&t, &lim()).unwrap()), "X_1_(0)*X_2_(0) + X_1_(1)*X_2_(1)");
        let full = LinearCode::full(&GaloisRing::named("F2").unwrap(), 2, &lim()).unwrap();
        assert_eq!(exact_we(&CodeTuple::new(vec![full]).unwrap(), &lim()).unwrap().num_terms(), 4);
        let ew = exact_we(&pair(&c, &c.dual(&lim()).unwrap()), &lim()).unwrap();
        assert_eq!(
            render(&ew),
            "X_1_(0,0)*X_2_(0,0) + X_1_(0,1)*X_2_(0,1) + X_1_(1,0)*X_2_(1,0) + X_1_(1,1)*X_2_(1,1)"
        );
        let rep = code("F2", 2, vec![vec![1, 1]]);
        let full_dual = LinearCode::full(&GaloisRing::named("F2").unwrap(), 2, &lim()).unwrap();
        let ew = exact_we(&pair(&rep, &full_dual), &lim()).unwrap();
        assert_eq!(ew.num_terms(), 8);
    }

    #[test]
    fn every_enumerator_sums_to_tuple_count() {
        let t = pair(&named("C1"), &named("C3"));
        for p in [
            mtuple_hamming_we(&t, &lim()).unwrap(),
            mtuple_complete_we(&t, &lim()).unwrap(),
            support_enum(&t, &lim()).unwrap(),
            exact_we(&t, &lim()).unwrap(),
        ] {
            assert_eq!(p.eval_ones().as_integer(), Some(&BigInt::from(64)));
        }
    }

    #[test]
    fn rth_support_golden() {
        let (c1, c2) = (named("C1"), named("C2"));
        let both = c1.intersection(&c2, &lim()).unwrap();
        assert_eq!(render(&rth_support_we(&c1, 1, &lim()).unwrap()), "3*X^4*Y^2 + 3*X^2*Y^4 + Y^6");
        assert_eq!(render(&rth_support_we(&c2, 1, &lim()).unwrap()), "2*X^3*Y^3 + Y^6");
        assert_eq!(render(&rth_support_we(&both, 1, &lim()).unwrap()), "Y^6");
        assert_eq!(render(&rth_support_we(&both, 2, &lim()).unwrap()), "0");
        assert_eq!(render(&rth_support_we(&c1, 0, &lim()).unwrap()), "X^6");
    }

    #[test]
    fn restricted_w2_golden() {
        let (c1, c2) = (named("C1"), named("C2"));
        let both = c1.intersection(&c2, &lim()).unwrap();
        let a1 = restricted_w2(&c1, &W2Constraint::IntersectDim1(both.clone()), &lim()).unwrap();
        assert_eq!(render(&a1), "3*Y^6");
        let a2 = restricted_w2(&c2, &W2Constraint::IntersectDim1(both), &lim()).unwrap();
        assert_eq!(render(&a2), "Y^6");
        let join = c1.join(&c2, &lim()).unwrap();
        let b = restricted_w2(&join, &W2Constraint::NotSubcodeOfEither(c1, c2), &lim()).unwrap();
        assert_eq!(render(&b), "3*X^3*Y^3 + 3*X^2*Y^4 + 3*X*Y^5 + 3*Y^6");
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket_count(2, 2, 1), BigInt::from(3));
        assert_eq!(bracket_count(2, 2, 2), BigInt::from(6));
        assert_eq!(bracket_count(5, 3, 0), BigInt::from(1));
        assert_eq!(bracket_count(2, 1, 2), BigInt::from(0));
    }

    #[test]
    fn klove_decomposition_small() {
        let c = named("C1");
        for m in 1..=3u32 {
            let mut sum = MultiPoly::zero(&Registry::plain(), CycField::rational());
            for r in 0..=3 {
                sum = sum.add(&rth_support_we(&c, r, &lim()).unwrap().scale_int(&bracket_count(2, m, r as u32))).unwrap();
            }
            let direct = mtuple_hamming_we(&CodeTuple::repeat(&c, m as usize).unwrap(), &lim()).unwrap();
            assert_eq!(sum, direct, "m = {m}");
        }
    }

    #[test]
    fn specialization_examples() {
        let c = code("F2", 2, vec![vec![1, 1]]);
        let t = CodeTuple::new(vec![c]).unwrap();
        let ew = exact_we(&t, &lim()).unwrap();
        let cw = specialize(&ew, EnumeratorKind::Exact(1), EnumeratorKind::Complete(1)).unwrap();
        assert_eq!(render(&cw), "X_(0)^2 + X_(1)^2");
        let se = specialize(&ew, EnumeratorKind::Exact(1), EnumeratorKind::Support(1)).unwrap();
        assert_eq!(render(&se), "X_1*X_2 + Y_1*Y_2");
        let cw12 = mtuple_complete_we(&pair(&named("C1"), &named("C2")), &lim()).unwrap();
        let w = specialize(&cw12, EnumeratorKind::Complete(2), EnumeratorKind::Hamming(2)).unwrap();
        assert_eq!(render(&w), "X^6 + 3*X^4*Y^2 + 5*X^3*Y^3 + 6*X^2*Y^4 + 3*X*Y^5 + 14*Y^6");
        assert!(specialize(&w, EnumeratorKind::Hamming(2), EnumeratorKind::Exact(2)).is_err());
        assert!(specialize(&cw12, EnumeratorKind::Complete(2), EnumeratorKind::Hamming(1)).is_err());
    }

    #[test]
    fn specialization_square_commutes() {
        let t = CodeTuple::new(vec![named("C3"), code("Z4", 6, vec![vec![1, 0, 2, 0, 3, 1]])]).unwrap();
        let ew = exact_we(&t, &lim()).unwrap();
        let k = |kind| enumerate(kind, &t, &lim()).unwrap();
        use EnumeratorKind::*;
        let via_c = specialize(&specialize(&ew, Exact(2), Complete(2)).unwrap(), Complete(2), Hamming(2)).unwrap();
        let via_s = specialize(&specialize(&ew, Exact(2), Support(2)).unwrap(), Support(2), Hamming(2)).unwrap();
        assert_eq!(via_c, via_s);
        assert_eq!(via_c, k(Hamming(2)));
        assert_eq!(specialize(&ew, Exact(2), Complete(2)).unwrap(), k(Complete(2)));
        assert_eq!(specialize(&ew, Exact(2), Support(2)).unwrap(), k(Support(2)));
        assert_eq!(specialize(&ew, Exact(2), Hamming(2)).unwrap(), k(Hamming(2)));
    }

    #[test]
    fn tuple_cap_is_enforced() {
        let l = Limits { max_tuples: 100, ..lim() };
        let d1 = named("D1");
        assert!(hamming_we(&[d1.clone(), d1], &l).unwrap_err().is_cap_exceeded());
    }

    #[test]
    fn rsupport_needs_a_field() {
        let z4 = code("Z4", 2, vec![vec![1, 1]]);
        assert_eq!(rth_support_we(&z4, 1, &lim()).unwrap_err(), Error::NotAField);
    }
}
