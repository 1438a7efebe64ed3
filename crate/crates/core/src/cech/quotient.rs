//! Exact quotients `V/S` of coordinate spaces.

use crate::exact::{Rational, RationalMatrix};

/// A complement of `S` inside `V`, chosen greedily from a basis of `V` in order,
/// with a precomputed solver for coordinates modulo `S`.
#[derive(Clone, Debug)]
pub struct Quotient {
    reps: Vec<Vec<Rational>>,
    pivot_rows: Vec<usize>,
    solver: RationalMatrix,
    columns: RationalMatrix,
}

impl Quotient {
    pub fn new(ambient: usize, space: &[Vec<Rational>], sub: &[Vec<Rational>]) -> Self {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        let mut chosen: Vec<Vec<Rational>> = Vec::new();
        let mut sub_basis: Vec<Vec<Rational>> = Vec::new();
        for (v, is_sub) in sub
            .iter()
            .map(|v| (v, true))
            .chain(space.iter().map(|v| (v, false)))
        {
            let r = rank_of(ambient, basis.iter().chain(std::iter::once(v)));
            if r > basis.len() {
                basis.push(v.clone());
                if is_sub {
                    sub_basis.push(v.clone());
                } else {
                    chosen.push(v.clone());
                }
            }
        }
        let all: Vec<Vec<Rational>> = chosen.iter().chain(sub_basis.iter()).cloned().collect();
        let columns = RationalMatrix::from_columns(&all, ambient);
        let pivot_rows = columns.transpose().rref().pivots;
        let solver = columns
            .submatrix(&pivot_rows, &(0..all.len()).collect::<Vec<_>>())
            .inverse()
            .expect("independent columns have an invertible pivot block");
        Quotient {
            reps: chosen,
            pivot_rows,
            solver,
            columns,
        }
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Rank of the subspace being divided out.
    pub fn sub_rank(&self) -> usize {
        self.pivot_rows.len() - self.reps.len()
    }

    pub fn representatives(&self) -> &[Vec<Rational>] {
        &self.reps
    }

    /// Coordinates `(c, d)` with `v = Σ cᵢ repᵢ + Σ dⱼ subⱼ`, or `None` if `v`
    /// is outside `V`. `d` refers to a maximal independent subset of `S`,
    /// taken greedily in order.
    pub fn decompose(&self, v: &[Rational]) -> Option<(Vec<Rational>, Vec<Rational>)> {
        if self.pivot_rows.is_empty() {
            return v
                .iter()
                .all(Rational::is_zero)
                .then(|| (Vec::new(), Vec::new()));
        }
        let rhs: Vec<Rational> = self.pivot_rows.iter().map(|&i| v[i].clone()).collect();
        let x = self.solver.mul_vec(&rhs);
        if self.columns.mul_vec(&x) != v {
            return None;
        }
        let d = x[self.reps.len()..].to_vec();
        let mut c = x;
        c.truncate(self.reps.len());
        Some((c, d))
    }

    /// Class of `v` in `V/S`.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.decompose(v).map(|(c, _)| c)
    }
}

pub(crate) fn rank_of<'a>(ambient: usize, vs: impl Iterator<Item = &'a Vec<Rational>>) -> usize {
    let rows: Vec<Vec<Rational>> = vs.cloned().collect();
    if rows.is_empty() {
        return 0;
    }
    debug_assert!(rows.iter().all(|r| r.len() == ambient));
    RationalMatrix::from_rows(rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn plane_modulo_line() {
        let space = vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[1, 1, 0])];
        let sub = vec![v(&[1, 1, 0])];
        let quo = Quotient::new(3, &space, &sub);
        assert_eq!(quo.dim(), 1);
        assert_eq!(quo.sub_rank(), 1);
        assert_eq!(quo.coordinates(&v(&[2, 0, 0])), Some(vec![q(2, 1)]));
        assert_eq!(quo.coordinates(&v(&[0, 3, 0])), Some(vec![q(-3, 1)]));
        assert_eq!(quo.coordinates(&v(&[0, 0, 1])), None);
    }
}
