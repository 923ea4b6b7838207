//! Sparse left-looking Gaussian elimination, generic over the coefficient field.
//!
//! Rows are reduced one at a time against the pivots found so far, using a
//! dense scratch accumulator and a heap of touched positions. Columns are
//! visited in a caller-chosen order; the pivot of a row is its first nonzero
//! column in that order.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::modp::{inv_mod, mul_mod, sub_mod};
use crate::scalar::ExactScalar;

/// Arithmetic needed by the elimination engine.
pub trait FieldOps {
    type E: Clone;
    fn zero(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    /// `acc -= a * b`
    fn sub_mul(&self, acc: &mut Self::E, a: &Self::E, b: &Self::E);
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
}

/// `Z/p` with word-sized `p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField(pub u64);

impl FieldOps for PrimeField {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn sub_mul(&self, acc: &mut u64, a: &u64, b: &u64) {
        *acc = sub_mod(*acc, mul_mod(*a, *b, self.0), self.0);
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.0)
    }
    fn inv(&self, a: &u64) -> u64 {
        inv_mod(*a, self.0).expect("nonzero residue is invertible")
    }
}

/// The rationals.
#[derive(Clone, Copy, Debug)]
pub struct Rationals;

impl FieldOps for Rationals {
    type E = ExactScalar;
    fn zero(&self) -> ExactScalar {
        ExactScalar::zero()
    }
    fn is_zero(&self, a: &ExactScalar) -> bool {
        a.is_zero()
    }
    fn sub_mul(&self, acc: &mut ExactScalar, a: &ExactScalar, b: &ExactScalar) {
        *acc -= &(a * b);
    }
    fn mul(&self, a: &ExactScalar, b: &ExactScalar) -> ExactScalar {
        a * b
    }
    fn inv(&self, a: &ExactScalar) -> ExactScalar {
        a.inv().expect("nonzero rational is invertible")
    }
}

/// A sparse row in *position* coordinates, sorted ascending.
pub type Row<E> = Vec<(u32, E)>;

/// Echelon form in position coordinates: `pivots[pos]` holds the row whose
/// leading entry (normalized to 1) sits at `pos`.
pub struct Echelon<E> {
    pub pivots: Vec<Option<Row<E>>>,
    /// Index of the input row that produced each pivot, by position.
    pub source: Vec<Option<usize>>,
    pub rank: usize,
}

impl<E: Clone> Echelon<E> {
    /// Pivot positions in ascending order.
    pub fn pivot_positions(&self) -> Vec<u32> {
        self.pivots
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(i, _)| i as u32)
            .collect()
    }
}

struct Scratch<E> {
    acc: Vec<E>,
    queued: Vec<bool>,
    heap: BinaryHeap<Reverse<u32>>,
}

impl<E: Clone> Scratch<E> {
    fn new(width: usize, zero: E) -> Self {
        Self { acc: vec![zero; width], queued: vec![false; width], heap: BinaryHeap::new() }
    }

    fn touch(&mut self, pos: u32) {
        if !self.queued[pos as usize] {
            self.queued[pos as usize] = true;
            self.heap.push(Reverse(pos));
        }
    }
}

/// Reduces `row` (position coordinates) against `pivots`. Returns the
/// normalized remainder if it is nonzero.
fn reduce_row<F: FieldOps>(
    field: &F,
    scratch: &mut Scratch<F::E>,
    pivots: &[Option<Row<F::E>>],
    row: &[(u32, F::E)],
) -> Option<Row<F::E>> {
    for (pos, v) in row {
        scratch.acc[*pos as usize] = v.clone();
        scratch.touch(*pos);
    }
    let mut out = None;
    while let Some(Reverse(pos)) = scratch.heap.pop() {
        let p = pos as usize;
        scratch.queued[p] = false;
        if field.is_zero(&scratch.acc[p]) {
            continue;
        }
        match &pivots[p] {
            Some(prow) => {
                let f = std::mem::replace(&mut scratch.acc[p], field.zero());
                for (c, v) in &prow[1..] {
                    field.sub_mul(&mut scratch.acc[*c as usize], &f, v);
                    scratch.touch(*c);
                }
            }
            None => {
                let lead = std::mem::replace(&mut scratch.acc[p], field.zero());
                let inv = field.inv(&lead);
                let mut rest: Vec<u32> = Vec::with_capacity(scratch.heap.len());
                while let Some(Reverse(c)) = scratch.heap.pop() {
                    scratch.queued[c as usize] = false;
                    rest.push(c);
                }
                rest.sort_unstable();
                let mut r = Vec::with_capacity(rest.len() + 1);
                r.push((pos, field.mul(&lead, &inv)));
                for c in rest {
                    let v = std::mem::replace(&mut scratch.acc[c as usize], field.zero());
                    if !field.is_zero(&v) {
                        r.push((c, field.mul(&v, &inv)));
                    }
                }
                out = Some(r);
                break;
            }
        }
    }
    out
}

/// Row-at-a-time elimination state.
pub struct Incremental<F: FieldOps> {
    field: F,
    ech: Echelon<F::E>,
    scratch: Scratch<F::E>,
    pushed: usize,
}

impl<F: FieldOps> Incremental<F> {
    pub fn new(field: F, width: usize) -> Self {
        let zero = field.zero();
        Self {
            ech: Echelon { pivots: vec![None; width], source: vec![None; width], rank: 0 },
            scratch: Scratch::new(width, zero),
            field,
            pushed: 0,
        }
    }

    /// Adds a row; returns the new pivot position if it raised the rank.
    pub fn push(&mut self, row: &[(u32, F::E)]) -> Option<usize> {
        let idx = self.pushed;
        self.pushed += 1;
        let r = reduce_row(&self.field, &mut self.scratch, &self.ech.pivots, row)?;
        let pos = r[0].0 as usize;
        self.ech.pivots[pos] = Some(r);
        self.ech.source[pos] = Some(idx);
        self.ech.rank += 1;
        Some(pos)
    }

    pub fn rank(&self) -> usize {
        self.ech.rank
    }

    pub fn is_full(&self) -> bool {
        self.ech.rank == self.ech.pivots.len()
    }

    pub fn finish(self) -> Echelon<F::E> {
        self.ech
    }
}

/// Eliminates rows (already in position coordinates) in the given order.
/// Stops early once every position carries a pivot.
pub fn eliminate<'a, F, I>(field: &F, width: usize, rows: I) -> Echelon<F::E>
where
    F: FieldOps + Clone,
    F::E: 'a,
    I: IntoIterator<Item = (usize, &'a [(u32, F::E)])>,
{
    let mut inc = Incremental::new(field.clone(), width);
    let mut source = vec![None; width];
    for (idx, row) in rows {
        if inc.is_full() {
            break;
        }
        if let Some(pos) = inc.push(row) {
            source[pos] = Some(idx);
        }
    }
    let mut ech = inc.finish();
    ech.source = source;
    ech
}

/// Turns an echelon form into reduced echelon form: every pivot column is
/// cleared from all other pivot rows.
pub fn back_substitute<F: FieldOps>(field: &F, ech: &mut Echelon<F::E>) {
    let width = ech.pivots.len();
    let mut acc: Vec<F::E> = vec![field.zero(); width];
    for pos in (0..width).rev() {
        let Some(row) = ech.pivots[pos].take() else { continue };
        if row.len() == 1 {
            ech.pivots[pos] = Some(row);
            continue;
        }
        let mut touched: Vec<u32> = Vec::with_capacity(row.len());
        for (c, v) in &row[1..] {
            acc[*c as usize] = v.clone();
            touched.push(*c);
        }
        let mut extra = Vec::new();
        for (c, _) in &row[1..] {
            let ci = *c as usize;
            if field.is_zero(&acc[ci]) {
                continue;
            }
            if let Some(prow) = &ech.pivots[ci] {
                let f = std::mem::replace(&mut acc[ci], field.zero());
                for (c2, v2) in &prow[1..] {
                    field.sub_mul(&mut acc[*c2 as usize], &f, v2);
                    extra.push(*c2);
                }
            }
        }
        touched.extend(extra);
        touched.sort_unstable();
        touched.dedup();
        let mut out = Vec::with_capacity(touched.len() + 1);
        out.push(row[0].clone());
        for c in touched {
            let v = std::mem::replace(&mut acc[c as usize], field.zero());
            if !field.is_zero(&v) {
                out.push((c, v));
            }
        }
        ech.pivots[pos] = Some(out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> ExactScalar {
        ExactScalar::from_int(v)
    }

    #[test]
    fn rank_of_small_matrix() {
        // [[1,2,3],[2,4,6],[0,1,1]] has rank 2.
        let rows: Vec<Row<ExactScalar>> = vec![
            vec![(0, q(1)), (1, q(2)), (2, q(3))],
            vec![(0, q(2)), (1, q(4)), (2, q(6))],
            vec![(1, q(1)), (2, q(1))],
        ];
        let mut e = eliminate(&Rationals, 3, rows.iter().enumerate().map(|(i, r)| (i, r.as_slice())));
        assert_eq!(e.rank, 2);
        back_substitute(&Rationals, &mut e);
        assert_eq!(e.pivots[0].as_ref().unwrap(), &vec![(0, q(1)), (2, q(1))]);
        assert_eq!(e.pivots[1].as_ref().unwrap(), &vec![(1, q(1)), (2, q(1))]);
    }

    #[test]
    fn modular_matches_rational_on_small_matrix() {
        let p = PrimeField(101);
        let rows: Vec<Row<u64>> = vec![vec![(0, 1), (1, 2)], vec![(0, 3), (1, 6)], vec![(2, 5)]];
        let e = eliminate(&p, 3, rows.iter().enumerate().map(|(i, r)| (i, r.as_slice())));
        assert_eq!(e.rank, 2);
        assert_eq!(e.pivot_positions(), vec![0, 2]);
    }
}
