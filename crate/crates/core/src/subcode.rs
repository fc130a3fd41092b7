//! Linear RLL subcodes of Reed-Muller codes.
//!
//! The explicit subcode multiplies every polynomial of degree at most `r - z`
//! in the first `m - z` variables by the anchor monomial `x_{m-z+1} ... x_m`,
//! where `z = ceil(log2(d+1))`. The anchor evaluates to ones exactly at
//! coordinates `= 2^z - 1 (mod 2^z)`, and every codeword's support sits inside
//! the anchor's, so all codewords keep at least `2^z - 1 >= d` zeros between
//! ones.

use crate::error::{invalid, Error, Result};
use crate::gf2::{BinaryMatrix, BitWord};
use crate::rll::{is_constrained, RllSpec};
use crate::rm::{binomial_sum, eval_monomial, monomials_over, RmCode};

#[derive(Debug, Clone)]
pub struct RllSubcode {
    m: usize,
    r: usize,
    spec: RllSpec,
    generator: BinaryMatrix,
}

impl RllSubcode {
    pub fn new(parent: &RmCode, spec: RllSpec) -> Result<Self> {
        Self::from_params(parent.m(), parent.r(), spec)
    }

    pub fn from_params(m: usize, r: usize, spec: RllSpec) -> Result<Self> {
        if r > m {
            return Err(invalid(format!("order r = {r} exceeds m = {m}")));
        }
        let z = spec.z();
        if m < z {
            return Err(invalid(format!(
                "m = {m} leaves no room for the {z}-variable anchor monomial"
            )));
        }
        let free: Vec<usize> = (0..m - z).collect();
        let anchor: Vec<usize> = (m - z..m).collect();
        let rows = if r < z {
            Vec::new()
        } else {
            monomials_over(&free, 0..=r - z)
                .into_iter()
                .map(|mut g| {
                    g.extend_from_slice(&anchor);
                    eval_monomial(m, &g)
                })
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self {
            m,
            r,
            spec,
            generator: BinaryMatrix::from_rows(rows, 1 << m)?,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn spec(&self) -> RllSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dimension(&self) -> usize {
        self.generator.num_rows()
    }

    pub fn generator(&self) -> &BinaryMatrix {
        &self.generator
    }

    pub fn rate(&self) -> f64 {
        self.dimension() as f64 / self.len() as f64
    }

    pub fn anchor(&self) -> BitWord {
        let anchor: Vec<usize> = (self.m - self.spec.z()..self.m).collect();
        eval_monomial(self.m, &anchor).expect("anchor variables are in range")
    }

    pub fn encode(&self, message: &BitWord) -> Result<BitWord> {
        self.generator.mul_left(message)
    }
}

/// `C(m-z, <= r-z) / 2^m`, zero when `r < z`.
pub fn subcode_rate(m: usize, r: usize, spec: RllSpec) -> f64 {
    let z = spec.z();
    if m < z {
        return 0.0;
    }
    binomial_sum(m - z, r as i64 - z as i64) as f64 / (1u64 << m) as f64
}

/// `1 + c`: words without two consecutive zeros map to `(1, inf)`-RLL words.
pub fn zero_one_rll_view(c: &BitWord) -> BitWord {
    c.complement()
}

/// Largest linear subcode whose codewords all satisfy the constraint.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub dimension: usize,
    /// Codewords spanning the subcode.
    pub basis: BinaryMatrix,
}

/// Largest message dimension the exhaustive oracle accepts.
pub const ORACLE_MAX_DIMENSION: usize = 20;

/// Exhaustive search for the largest linear constrained subcode.
///
/// All `2^K` codewords are screened; the search then grows a basis one
/// vector at a time. Basis vectors are taken in increasing message order,
/// which covers every subspace through its greedy basis, and a branch is cut
/// once the compatible candidates cannot fill a larger subspace.
pub fn largest_linear_rll_subcode(code: &RmCode, spec: RllSpec) -> Result<OracleResult> {
    let k = code.dimension();
    if k > ORACLE_MAX_DIMENSION {
        return Err(Error::Infeasible(format!(
            "exhaustive subcode search needs K <= {ORACLE_MAX_DIMENSION}, got K = {k}"
        )));
    }
    let g = code.generator();
    let size = 1usize << k;

    let mut allowed = vec![false; size];
    allowed[0] = true;
    let mut word = BitWord::zeros(code.len());
    let mut msg = 0usize;
    for step in 1..size {
        let row = step.trailing_zeros() as usize;
        word ^= g.row(row);
        msg ^= 1 << row;
        allowed[msg] = is_constrained(&word, spec);
    }

    let candidates: Vec<u32> = (1..size as u32).filter(|&u| allowed[u as usize]).collect();
    let mut search = Search {
        allowed: &allowed,
        in_span: vec![false; size],
        best: Vec::new(),
    };
    search.in_span[0] = true;
    search.grow(&mut vec![0], &mut Vec::new(), &candidates);

    let rows = search
        .best
        .iter()
        .map(|&u| code.encode(&BitWord::from_u64(u as u64, k)))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleResult {
        dimension: rows.len(),
        basis: BinaryMatrix::from_rows(rows, code.len())?,
    })
}

struct Search<'a> {
    allowed: &'a [bool],
    in_span: Vec<bool>,
    best: Vec<u32>,
}

impl Search<'_> {
    fn grow(&mut self, span: &mut Vec<u32>, basis: &mut Vec<u32>, candidates: &[u32]) {
        if basis.len() > self.best.len() {
            self.best = basis.clone();
        }
        for (i, &c) in candidates.iter().enumerate() {
            // a subspace of dimension dim + j needs 2^dim (2^j - 1) compatible words
            let remaining = candidates.len() - i;
            let reachable = basis.len() + ((remaining / span.len()) + 1).ilog2() as usize;
            if reachable <= self.best.len() {
                return;
            }
            let next: Vec<u32> = candidates[i + 1..]
                .iter()
                .copied()
                .filter(|&x| {
                    !self.in_span[(x ^ c) as usize]
                        && span.iter().all(|&w| self.allowed[(x ^ c ^ w) as usize])
                })
                .collect();
            let old = span.len();
            for j in 0..old {
                let v = span[j] ^ c;
                self.in_span[v as usize] = true;
                span.push(v);
            }
            basis.push(c);
            self.grow(span, basis, &next);
            basis.pop();
            for v in span.drain(old..) {
                self.in_span[v as usize] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> BitWord {
        s.parse().unwrap()
    }

    fn all_codewords(g: &BinaryMatrix) -> Vec<BitWord> {
        let k = g.num_rows();
        (0..1u64 << k)
            .map(|u| g.mul_left(&BitWord::from_u64(u, k)).unwrap())
            .collect()
    }

    #[test]
    fn rm31_d1() {
        let code = RmCode::new(3, 1).unwrap();
        let sub = RllSubcode::new(&code, RllSpec::new(1)).unwrap();
        assert_eq!(sub.dimension(), 1);
        assert_eq!(sub.generator().row(0), &w("01010101"));
        assert_eq!(sub.anchor(), w("01010101"));
    }

    #[test]
    fn rm42_d2() {
        let code = RmCode::new(4, 2).unwrap();
        let sub = RllSubcode::new(&code, RllSpec::new(2)).unwrap();
        assert_eq!(sub.dimension(), 1);
        assert_eq!(sub.generator().row(0), &w("0001000100010001"));
        assert!(is_constrained(sub.generator().row(0), RllSpec::new(2)));
    }

    #[test]
    fn rm52_d1_all_constrained() {
        let code = RmCode::new(5, 2).unwrap();
        let spec = RllSpec::new(1);
        let sub = RllSubcode::new(&code, spec).unwrap();
        assert_eq!(sub.dimension(), 5);
        let words = all_codewords(sub.generator());
        assert_eq!(words.len(), 32);
        assert!(words.iter().all(|c| is_constrained(c, spec)));
        // rows lie in the parent code
        let parent = code.generator();
        for row in sub.generator().rows() {
            assert!(parent.row_space_contains(row).unwrap());
        }
    }

    #[test]
    fn degenerate_and_rejected() {
        let code = RmCode::new(3, 1).unwrap();
        let sub = RllSubcode::new(&code, RllSpec::new(2)).unwrap();
        assert_eq!(sub.dimension(), 0);
        assert!(RllSubcode::from_params(1, 1, RllSpec::new(3)).is_err());
    }

    #[test]
    fn rates() {
        assert_eq!(subcode_rate(3, 1, RllSpec::new(1)), 1.0 / 8.0);
        assert_eq!(subcode_rate(10, 5, RllSpec::new(1)), 0.25);
        assert_eq!(subcode_rate(4, 1, RllSpec::new(2)), 0.0);
    }

    #[test]
    fn complement_view() {
        assert_eq!(zero_one_rll_view(&w("01010101")), w("10101010"));
        let c = w("11011011");
        let v = zero_one_rll_view(&c);
        assert_eq!(v, w("00100100"));
        assert!(is_constrained(&v, RllSpec::new(1)));
        assert_eq!(zero_one_rll_view(&v), c);
    }

    #[test]
    fn oracle_rm31() {
        let code = RmCode::new(3, 1).unwrap();
        let spec = RllSpec::new(1);
        let constrained: Vec<String> = all_codewords(code.generator())
            .into_iter()
            .filter(|c| is_constrained(c, spec))
            .map(|c| c.to_string())
            .collect();
        let mut sorted = constrained.clone();
        sorted.sort();
        assert_eq!(sorted, ["00000000", "01010101", "10100101", "10101010"]);
        let res = largest_linear_rll_subcode(&code, spec).unwrap();
        assert_eq!(res.dimension, 1);
    }

    #[test]
    fn oracle_rm_order_zero() {
        for m in 1..6 {
            let code = RmCode::new(m, 0).unwrap();
            for d in 1..4 {
                let res = largest_linear_rll_subcode(&code, RllSpec::new(d)).unwrap();
                assert_eq!(res.dimension, 0);
            }
        }
    }

    #[test]
    fn oracle_basis_is_closed() {
        let code = RmCode::new(4, 2).unwrap();
        let spec = RllSpec::new(1);
        let res = largest_linear_rll_subcode(&code, spec).unwrap();
        assert_eq!(res.basis.rank(), res.dimension);
        assert!(all_codewords(&res.basis)
            .iter()
            .all(|c| is_constrained(c, spec)));
        let explicit = RllSubcode::new(&code, spec).unwrap();
        assert!(res.dimension >= explicit.dimension());
    }

    #[test]
    fn oracle_guard() {
        let code = RmCode::new(6, 3).unwrap();
        assert!(matches!(
            largest_linear_rll_subcode(&code, RllSpec::new(1)),
            Err(Error::Infeasible(_))
        ));
    }
}
