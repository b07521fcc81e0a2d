use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{extension_field, FieldElement, FieldSpec};

use super::points::projective_points;
use super::LinearCode;

pub const DEFAULT_DISTANCE_BUDGET: u128 = 10_000_000;

/// Number of chunks the message range is split into for parallel search.
const CHUNKS: u128 = 1024;

/// `(q^k - 1)/(q - 1)`, saturating.
pub fn projective_message_count(q: u32, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..k {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(q as u128);
    }
    total
}

/// Minimum Hamming weight over nonzero codewords, on the global rayon pool.
pub fn exact_min_distance(code: &LinearCode, budget: u128) -> Result<u64> {
    search(code, budget, true)
}

/// As [`exact_min_distance`], on a dedicated pool of `threads` workers
/// (`threads <= 1` runs on the calling thread). The result never depends on
/// the thread count.
pub fn min_distance_with_threads(code: &LinearCode, budget: u128, threads: usize) -> Result<u64> {
    if threads <= 1 {
        return search(code, budget, false);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker pool: {e}")))?;
    pool.install(|| search(code, budget, true))
}

struct Enumerator<'a> {
    field: &'a FieldSpec,
    rows: Vec<Vec<FieldElement>>,
    /// `prefix[i]` is the index of the first message whose leading 1 sits at `i`.
    prefix: Vec<u128>,
    /// `step[v] = (v+1) - v` as field elements, with `step[q-1] = 0 - (q-1)`.
    step: Vec<FieldElement>,
}

impl Enumerator<'_> {
    fn locate(&self, r: u128) -> (usize, u128) {
        let i = self.prefix.partition_point(|&p| p <= r) - 1;
        (i, r - self.prefix[i])
    }

    fn axpy(&self, cw: &mut [FieldElement], c: FieldElement, row: usize) {
        for (x, &g) in cw.iter_mut().zip(&self.rows[row]) {
            *x = self.field.add(*x, self.field.mul(c, g));
        }
    }

    /// Smallest weight in the message range `[lo, hi)`, or `best` if none is
    /// smaller.
    fn scan(&self, lo: u128, hi: u128, mut best: u64) -> u64 {
        let k = self.rows.len();
        let n = self.rows[0].len();
        let q = self.field.q() as u128;
        let mut r = lo;
        while r < hi {
            let (lead, mut offset) = self.locate(r);
            let block_end = hi.min(self.prefix[lead + 1]);
            let mut msg = vec![0u32; k];
            msg[lead] = 1;
            for slot in (lead + 1..k).rev() {
                msg[slot] = (offset % q) as u32;
                offset /= q;
            }
            let mut cw = vec![FieldElement::ZERO; n];
            for (j, &m) in msg.iter().enumerate() {
                if m != 0 {
                    self.axpy(&mut cw, FieldElement::new(m), j);
                }
            }
            loop {
                let mut w = 0;
                for x in &cw {
                    if !x.is_zero() {
                        w += 1;
                        if w >= best {
                            break;
                        }
                    }
                }
                best = best.min(w);
                r += 1;
                if r == block_end {
                    break;
                }
                let mut j = k - 1;
                loop {
                    let v = msg[j];
                    self.axpy(&mut cw, self.step[v as usize], j);
                    if (v as u128) + 1 < q {
                        msg[j] = v + 1;
                        break;
                    }
                    msg[j] = 0;
                    j -= 1;
                }
            }
        }
        best
    }
}

fn search(code: &LinearCode, budget: u128, parallel: bool) -> Result<u64> {
    let field = code.field();
    let k = code.k();
    if k == 0 {
        return Err(Error::PreconditionFailed("the zero code has no minimum distance".into()));
    }
    let q = field.q();
    let total = projective_message_count(q, k);
    if total > budget {
        return Err(Error::BudgetExceeded { required: total, budget });
    }
    let mut prefix = Vec::with_capacity(k + 1);
    let mut acc = 0u128;
    for i in 0..k {
        prefix.push(acc);
        acc += (q as u128).pow((k - 1 - i) as u32);
    }
    prefix.push(acc);
    let step = (0..q)
        .map(|v| {
            let next = if v + 1 < q { FieldElement::new(v + 1) } else { FieldElement::ZERO };
            field.sub(next, FieldElement::new(v))
        })
        .collect();
    let en = Enumerator { field, rows: code.generator().to_rows(), prefix, step };
    let n = code.n() as u64;
    let chunks = CHUNKS.min(total);
    let bounds = |c: u128| (total * c / chunks, total * (c + 1) / chunks);
    let best = if parallel {
        (0..chunks as u64)
            .into_par_iter()
            .map(|c| {
                let (lo, hi) = bounds(c as u128);
                en.scan(lo, hi, n + 1)
            })
            .min()
    } else {
        (0..chunks).map(|c| {
            let (lo, hi) = bounds(c);
            en.scan(lo, hi, n + 1)
        })
        .min()
    };
    Ok(best.expect("at least one chunk"))
}

/// Outcome of intersecting the forms `x_i^q x_j - x_i x_j^q` over `F_{q^m}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocusReport {
    pub ambient_points: u64,
    pub survivors: u64,
    pub survivors_rational: bool,
    pub expected: u64,
}

impl LocusReport {
    pub fn holds(&self) -> bool {
        self.survivors_rational && self.survivors == self.expected
    }
}

pub fn rational_locus(l: usize, q: u64, m: u32) -> Result<LocusReport> {
    let base = FieldSpec::with_order(q)?;
    let (big, _) = extension_field(&base, m)?;
    let ambient = projective_message_count(big.q(), l + 1);
    if ambient > DEFAULT_DISTANCE_BUDGET {
        return Err(Error::BudgetExceeded { required: ambient, budget: DEFAULT_DISTANCE_BUDGET });
    }
    let frob = |a: FieldElement| big.pow(a, q);
    let mut survivors = 0;
    let mut rational = true;
    for pt in projective_points(&big, l) {
        let fr: Vec<FieldElement> = pt.iter().map(|&a| frob(a)).collect();
        let vanishes = (0..=l).all(|i| {
            (i + 1..=l).all(|j| big.sub(big.mul(fr[i], pt[j]), big.mul(pt[i], fr[j])).is_zero())
        });
        if vanishes {
            survivors += 1;
            rational &= pt.iter().zip(&fr).all(|(a, b)| a == b);
        }
    }
    Ok(LocusReport {
        ambient_points: ambient as u64,
        survivors,
        survivors_rational: rational,
        expected: projective_message_count(q as u32, l + 1) as u64,
    })
}

/// True iff the common zeros of `x_i^q x_j - x_i x_j^q` in `P^l(F_{q^m})` are
/// exactly `P^l(F_q)`.
pub fn rational_locus_check(l: usize, q: u64, m: u32) -> Result<bool> {
    Ok(rational_locus(l, q, m)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn code(q: u64, rows: &[&[u32]]) -> LinearCode {
        let f = FieldSpec::with_order(q).unwrap();
        let m = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&i| FieldElement::new(i)).collect()).collect());
        LinearCode::from_matrix(&f, &m)
    }

    fn brute_force(c: &LinearCode) -> u64 {
        let f = c.field();
        let q = f.q() as u64;
        let rows = c.generator().to_rows();
        let mut best = u64::MAX;
        for code in 1..q.pow(c.k() as u32) {
            let mut cw = vec![FieldElement::ZERO; c.n()];
            let mut x = code;
            for row in &rows {
                let a = FieldElement::new((x % q) as u32);
                x /= q;
                for (y, &g) in cw.iter_mut().zip(row) {
                    *y = f.add(*y, f.mul(a, g));
                }
            }
            best = best.min(cw.iter().filter(|e| !e.is_zero()).count() as u64);
        }
        best
    }

    #[test]
    fn hamming_and_repetition() {
        let h = code(2, &[&[1, 0, 0, 0, 0, 1, 1], &[0, 1, 0, 0, 1, 0, 1], &[0, 0, 1, 0, 1, 1, 0], &[0, 0, 0, 1, 1, 1, 1]]);
        assert_eq!(exact_min_distance(&h, 1000).unwrap(), 3);
        let r = code(5, &[&[1, 1, 1, 1]]);
        assert_eq!(exact_min_distance(&r, 1000).unwrap(), 4);
    }

    #[test]
    fn matches_full_enumeration_over_f4() {
        let c = code(4, &[&[1, 0, 0, 1, 2, 3, 1], &[0, 1, 0, 3, 1, 2, 2], &[0, 0, 1, 2, 3, 1, 3]]);
        let d = brute_force(&c);
        for t in [1, 2, 4] {
            assert_eq!(min_distance_with_threads(&c, 1000, t).unwrap(), d);
        }
    }

    #[test]
    fn budget_guard() {
        let c = code(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(projective_message_count(3, 3), 13);
        match exact_min_distance(&c, 12) {
            Err(Error::BudgetExceeded { required, budget }) => assert_eq!((required, budget), (13, 12)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn locus_examples() {
        let r = rational_locus(1, 2, 2).unwrap();
        assert_eq!((r.ambient_points, r.survivors), (5, 3));
        assert!(r.holds());
        let r = rational_locus(2, 3, 2).unwrap();
        assert_eq!((r.ambient_points, r.survivors), (91, 13));
        let r = rational_locus(2, 2, 3).unwrap();
        assert_eq!((r.ambient_points, r.survivors), (73, 7));
        assert!(matches!(rational_locus_check(2, 16, 5), Err(Error::FieldTooLarge(_))));
    }
}
