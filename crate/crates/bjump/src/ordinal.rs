//! Ordinals below ω^ω in Cantor normal form.
//!
//! An ordinal is a finite coefficient vector `c_0 … c_d` standing for
//! `ω^d·c_d + … + ω·c_1 + c_0` (little-endian, canonical form strips
//! trailing zero leading coefficients). Comparison is lexicographic from the
//! highest power down; the natural (Hessenberg) sum is coefficient-wise
//! addition, which makes its two closure properties one-line inductions —
//! and, at desk scale, exhaustively checkable.
//!
//! Text form: `w^2*3 + w*2 + 5`. Machine-facing codes are cons-list codes of
//! the coefficient vector, so the small ordinals the witnesses actually use
//! stay loadable into unary registers.

use crate::nat::Nat;
use crate::oracle::{decode_list, encode_list};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

/// Ordinal below ω^ω as a little-endian coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrdinalCNF {
    /// `coeffs[i]` multiplies ω^i; no trailing zeros.
    coeffs: Vec<u64>,
}

impl OrdinalCNF {
    pub const ZERO: OrdinalCNF = OrdinalCNF { coeffs: Vec::new() };

    pub fn new(mut coeffs: Vec<u64>) -> OrdinalCNF {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        OrdinalCNF { coeffs }
    }

    pub fn from_nat(n: u64) -> OrdinalCNF {
        OrdinalCNF::new(vec![n])
    }

    /// ω^power · coeff.
    pub fn omega_term(power: usize, coeff: u64) -> OrdinalCNF {
        let mut coeffs = vec![0; power + 1];
        coeffs[power] = coeff;
        OrdinalCNF::new(coeffs)
    }

    pub fn omega() -> OrdinalCNF {
        OrdinalCNF::omega_term(1, 1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> u64 {
        self.coeffs.get(power).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree d such that the ordinal is < ω^(d+1); zero ordinal has degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// `self < ω^power`.
    pub fn below_omega_power(&self, power: usize) -> bool {
        self.coeffs.len() <= power
    }

    /// The units digit `u(β)`: the coefficient of ω^0.
    pub fn units(&self) -> u64 {
        self.coeff(0)
    }

    /// Natural (commutative) sum: coefficient-wise addition.
    pub fn natural_add(&self, other: &OrdinalCNF) -> OrdinalCNF {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|i| self.coeff(i) + other.coeff(i)).collect();
        OrdinalCNF::new(coeffs)
    }

    /// Successor (also the natural sum with 1).
    pub fn succ(&self) -> OrdinalCNF {
        self.natural_add(&OrdinalCNF::from_nat(1))
    }

    /// Machine-facing code: the cons-list code of the coefficient vector.
    pub fn code(&self) -> Nat {
        let items: Vec<Nat> = self.coeffs.iter().map(|&c| Nat::from(c)).collect();
        encode_list(&items)
    }

    /// Total decoding of codes; vectors that do not fit desk bounds are
    /// rejected as non-ordinals.
    pub fn from_code(code: &Nat) -> Option<OrdinalCNF> {
        let items = decode_list(code);
        if items.len() > 8 {
            return None;
        }
        let mut coeffs = Vec::with_capacity(items.len());
        for it in items {
            coeffs.push(it.to_u64()?);
        }
        Some(OrdinalCNF::new(coeffs))
    }
}

/// `natural_sum(terms)`: the commutative sum `t_1 +_c … +_c t_n`.
pub fn natural_sum(terms: &[OrdinalCNF]) -> OrdinalCNF {
    terms.iter().fold(OrdinalCNF::ZERO, |acc, t| acc.natural_add(t))
}

impl PartialOrd for OrdinalCNF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrdinalCNF {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.coeffs.len()).rev() {
            match self.coeffs[i].cmp(&other.coeffs[i]) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

#[derive(Debug, thiserror::Error)]
pub enum OrdinalError {
    #[error("argument {index} = {value} is not below ω^{k}")]
    RankArgTooBig { index: usize, value: String, k: usize },
    #[error("cannot parse ordinal `{text}`: {msg}")]
    Parse { text: String, msg: String },
}

/// The rank used by the jump lemma:
/// `r(l, α_0, …, α_m) = ω^k·l +_c α_0 +_c … +_c α_m +_c u(α_0 +_c … +_c α_m)`.
///
/// Each `α_i` must be below ω^k; the result is then below ω^(k+1).
pub fn rank_r(k: usize, l: u64, alphas: &[OrdinalCNF]) -> Result<OrdinalCNF, OrdinalError> {
    assert!(k >= 1, "rank_r needs k ≥ 1");
    for (index, a) in alphas.iter().enumerate() {
        if !a.below_omega_power(k) {
            return Err(OrdinalError::RankArgTooBig {
                index,
                value: a.to_string(),
                k,
            });
        }
    }
    let sum = natural_sum(alphas);
    let units = OrdinalCNF::from_nat(sum.units());
    Ok(OrdinalCNF::omega_term(k, l)
        .natural_add(&sum)
        .natural_add(&units))
}

impl fmt::Display for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "w")?,
                (1, c) => write!(f, "w*{c}")?,
                (i, 1) => write!(f, "w^{i}")?,
                (i, c) => write!(f, "w^{i}*{c}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OrdinalCNF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for OrdinalCNF {
    type Err = OrdinalError;

    /// Parse `w^2*3 + w*2 + 5` (also accepts `3w^2` omitted? no — the `w^i*c`
    /// form only, plus bare `w^i`, `w`, and constants).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| OrdinalError::Parse { text: s.to_string(), msg: msg.to_string() };
        let mut acc = OrdinalCNF::ZERO;
        let body = s.trim();
        if body.is_empty() {
            return Err(err("empty"));
        }
        for raw in body.split('+') {
            let term = raw.trim();
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (power, coeff_text): (usize, &str) = if let Some(rest) = term.strip_prefix("w^") {
                let (p, c) = match rest.split_once('*') {
                    Some((p, c)) => (p, c),
                    None => (rest, "1"),
                };
                let power: usize =
                    p.trim().parse().map_err(|_| err("bad exponent"))?;
                (power, c)
            } else if let Some(rest) = term.strip_prefix('w') {
                let c = match rest.trim().strip_prefix('*') {
                    Some(c) => c,
                    None if rest.trim().is_empty() => "1",
                    None => return Err(err("expected `*` after w")),
                };
                (1, c)
            } else {
                (0, term)
            };
            let coeff: u64 = coeff_text
                .trim()
                .parse()
                .map_err(|_| err("bad coefficient"))?;
            if power > 16 {
                return Err(err("exponent beyond desk scale"));
            }
            acc = acc.natural_add(&OrdinalCNF::omega_term(power, coeff));
        }
        Ok(acc)
    }
}

/// All ordinals below `bound` whose canonical code is ≤ `horizon`, sorted
/// by code. Enumerates coefficient vectors directly with monotone pruning
/// (the cons code is strictly monotone in every coefficient), so the cost
/// is proportional to the output, not to the horizon.
pub fn ordinal_codes_below(bound: &OrdinalCNF, horizon: u64) -> Vec<(u64, OrdinalCNF)> {
    fn raw_code(v: &[u64]) -> Option<u64> {
        let items: Vec<Nat> = v.iter().map(|&c| Nat::from(c)).collect();
        encode_list(&items).to_u64()
    }
    let max_len = bound.coeffs().len();
    let mut out: Vec<(u64, OrdinalCNF)> = Vec::new();
    if OrdinalCNF::ZERO < *bound {
        out.push((0, OrdinalCNF::ZERO));
    }
    // Raw vectors little-endian; a vector is a canonical code iff its top
    // coefficient is nonzero. Non-canonical prefixes are kept: they seed
    // longer vectors. The cons code is strictly monotone both in each
    // coefficient and under extension, so the breaks below are sound.
    let mut stack: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next: Vec<Vec<u64>> = Vec::new();
        for prefix in &stack {
            let mut c = 0u64;
            loop {
                let mut v = prefix.clone();
                v.push(c);
                match raw_code(&v) {
                    Some(code) if code <= horizon => {
                        if *v.last().unwrap() != 0 {
                            let o = OrdinalCNF::new(v.clone());
                            if o < *bound {
                                out.push((code, o));
                            }
                        }
                        next.push(v);
                        c += 1;
                    }
                    _ => break,
                }
            }
        }
        stack = next;
        if stack.is_empty() {
            break;
        }
    }
    out.sort_by_key(|(c, _)| *c);
    out
}

/// Every coefficient vector of length ≤ `max_len` with entries ≤ `max_coeff`
/// (canonicalized); the exhaustive grid for the ordinal laws.
pub fn small_ordinal_grid(max_len: usize, max_coeff: u64) -> Vec<OrdinalCNF> {
    let mut out = vec![OrdinalCNF::ZERO];
    let mut frontier: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for v in &frontier {
            for c in 0..=max_coeff {
                let mut w = v.clone();
                w.push(c);
                next.push(w);
            }
        }
        for v in &next {
            let o = OrdinalCNF::new(v.clone());
            if !out.contains(&o) {
                out.push(o);
            }
        }
        frontier = next;
    }
    out
}
