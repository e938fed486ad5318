//! Dense matrices over a [`FieldSpec`], with block partitioning, the CSV
//! exchange format and exact right inverses.

use std::fmt::Write as _;

use rand_core::RngCore;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

/// Row-major matrix of field elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![FieldElement::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    /// Uniform-ish random entries (modulo reduction of 32-bit draws).
    pub fn random(field: &FieldSpec, rows: usize, cols: usize, rng: &mut impl RngCore) -> Self {
        let q = field.order();
        let data = (0..rows * cols)
            .map(|_| FieldElement::from_code(rng.next_u32() % q))
            .collect();
        Matrix { rows, cols, data }
    }

    pub fn from_codes(rows: usize, cols: usize, codes: &[u32]) -> Result<Self> {
        Self::new(rows, cols, codes.iter().map(|&c| FieldElement::from_code(c)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    /// Schoolbook product; also returns the number of field multiplications.
    pub fn mul(&self, field: &FieldSpec, other: &Matrix) -> Result<(Matrix, u64)> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = FieldElement::ZERO;
                for l in 0..self.cols {
                    acc = field.mul_add(acc, self.get(i, l), other.get(l, j));
                }
                out.set(i, j, acc);
            }
        }
        let ops = (self.rows * self.cols * other.cols) as u64;
        Ok((out, ops))
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, field: &FieldSpec, c: FieldElement, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if c.is_zero() {
            return;
        }
        for (x, &y) in self.data.iter_mut().zip(&other.data) {
            *x = field.mul_add(*x, c, y);
        }
    }

    fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.set(i, j, self.get(r0 + i, c0 + j));
            }
        }
        out
    }

    /// Horizontal strips: `A = (A_1; A_2; ...; A_parts)`.
    pub fn split_rows(&self, parts: usize) -> Result<Vec<Matrix>> {
        if parts == 0 || !self.rows.is_multiple_of(parts) {
            return Err(Error::PartitionIndivisible(format!(
                "{} rows into {parts} blocks",
                self.rows
            )));
        }
        let h = self.rows / parts;
        Ok((0..parts).map(|i| self.block(i * h, 0, h, self.cols)).collect())
    }

    /// Vertical strips: `A = (A_1 A_2 ... A_parts)`.
    pub fn split_cols(&self, parts: usize) -> Result<Vec<Matrix>> {
        if parts == 0 || !self.cols.is_multiple_of(parts) {
            return Err(Error::PartitionIndivisible(format!(
                "{} columns into {parts} blocks",
                self.cols
            )));
        }
        let w = self.cols / parts;
        Ok((0..parts).map(|j| self.block(0, j * w, self.rows, w)).collect())
    }

    /// Assembles a grid of equally sized blocks, `grid[i][j]` at block row i, column j.
    pub fn from_blocks(grid: &[Vec<Matrix>]) -> Result<Matrix> {
        let first = grid
            .first()
            .and_then(|r| r.first())
            .ok_or_else(|| Error::DimensionMismatch("empty block grid".into()))?;
        let (h, w) = (first.rows, first.cols);
        let bc = grid[0].len();
        let mut out = Matrix::zeros(h * grid.len(), w * bc);
        for (bi, row) in grid.iter().enumerate() {
            if row.len() != bc {
                return Err(Error::DimensionMismatch("ragged block grid".into()));
            }
            for (bj, blk) in row.iter().enumerate() {
                if (blk.rows, blk.cols) != (h, w) {
                    return Err(Error::DimensionMismatch("blocks differ in size".into()));
                }
                for i in 0..h {
                    for j in 0..w {
                        out.set(bi * h + i, bj * w + j, blk.get(i, j));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Zero-pads to at least `rows × cols`.
    pub fn padded(&self, rows: usize, cols: usize) -> Matrix {
        let mut out = Matrix::zeros(rows.max(self.rows), cols.max(self.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Top-left `rows × cols` corner.
    pub fn truncated(&self, rows: usize, cols: usize) -> Matrix {
        self.block(0, 0, rows.min(self.rows), cols.min(self.cols))
    }

    /// CSV with the field header line.
    pub fn to_csv(&self, field: &FieldSpec) -> String {
        let mut out = field.header();
        out.push('\n');
        for i in 0..self.rows {
            for j in 0..self.cols {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{}", self.get(i, j).code()).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Parses CSV produced by [`Matrix::to_csv`]. Every code is checked
    /// against the header's field.
    pub fn from_csv(text: &str) -> Result<(FieldSpec, Matrix)> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| Error::Parse("empty matrix file".into()))?;
        let field = FieldSpec::parse_header(header)?;
        let mut data = Vec::new();
        let mut rows = 0;
        let mut cols = None;
        for (ln, line) in lines.enumerate() {
            let row = line
                .split(',')
                .map(|cell| {
                    let code: u32 = cell
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("row {ln}: bad cell {cell:?}")))?;
                    field.element(code)
                })
                .collect::<Result<Vec<_>>>()?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::Parse(format!("row {ln} has {} cells, expected {c}", row.len())))
                }
                _ => {}
            }
            data.extend(row);
            rows += 1;
        }
        let cols = cols.ok_or_else(|| Error::Parse("matrix has no rows".into()))?;
        Ok((field, Matrix::new(rows, cols, data)?))
    }
}

/// Right inverse of a full-row-rank matrix, and the multiplication count.
///
/// Picks pivot columns by elimination, inverts that square submatrix and
/// places its rows at the pivot positions; the other rows are zero.
pub fn right_inverse(field: &FieldSpec, g: &Matrix) -> Result<(Matrix, u64)> {
    let (r, c) = (g.rows, g.cols);
    if r > c {
        return Err(Error::RankDeficient);
    }
    let mut ops = 0u64;
    // Augmented [G | I_r] reduced to [E | T] with T·G = E in reduced row-echelon form.
    let mut work = g.clone();
    let mut t = Matrix::identity(r);
    let mut pivots = Vec::with_capacity(r);
    let mut row = 0;
    for col in 0..c {
        if row == r {
            break;
        }
        let Some(p) = (row..r).find(|&i| !work.get(i, col).is_zero()) else {
            continue;
        };
        swap_rows(&mut work, row, p);
        swap_rows(&mut t, row, p);
        let inv = field.inv(work.get(row, col))?;
        scale_row(field, &mut work, row, inv);
        scale_row(field, &mut t, row, inv);
        ops += (c + r) as u64;
        for i in 0..r {
            if i == row {
                continue;
            }
            let f = work.get(i, col);
            if f.is_zero() {
                continue;
            }
            let neg = field.neg(f);
            axpy_row(field, &mut work, i, row, neg);
            axpy_row(field, &mut t, i, row, neg);
            ops += (c + r) as u64;
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() < r {
        return Err(Error::RankDeficient);
    }
    // On the pivot columns E is the identity, so T is the inverse of G restricted to them.
    let mut out = Matrix::zeros(c, r);
    for (k, &pc) in pivots.iter().enumerate() {
        for j in 0..r {
            out.set(pc, j, t.get(k, j));
        }
    }
    Ok((out, ops))
}

fn swap_rows(m: &mut Matrix, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols {
        m.data.swap(a * m.cols + j, b * m.cols + j);
    }
}

fn scale_row(field: &FieldSpec, m: &mut Matrix, r: usize, c: FieldElement) {
    for j in 0..m.cols {
        let v = m.get(r, j);
        m.set(r, j, field.mul(v, c));
    }
}

/// `row[dst] += c · row[src]`.
fn axpy_row(field: &FieldSpec, m: &mut Matrix, dst: usize, src: usize, c: FieldElement) {
    for j in 0..m.cols {
        let v = field.mul_add(m.get(dst, j), c, m.get(src, j));
        m.set(dst, j, v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_xoshiro::Xoshiro256PlusPlus;

    fn gf(q: u32) -> FieldSpec {
        FieldSpec::of_order(q).unwrap()
    }

    #[test]
    fn product_matches_hand_computation() {
        let f = gf(5);
        let a = Matrix::from_codes(2, 2, &[1, 2, 3, 4]).unwrap();
        let b = Matrix::from_codes(2, 2, &[0, 1, 1, 0]).unwrap();
        let (ab, ops) = a.mul(&f, &b).unwrap();
        assert_eq!(ab, Matrix::from_codes(2, 2, &[2, 1, 4, 3]).unwrap());
        assert_eq!(ops, 8);
        assert!(matches!(
            a.mul(&f, &Matrix::zeros(3, 1)),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn blocks_round_trip() {
        let f = gf(4);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(1);
        let a = Matrix::random(&f, 4, 6, &mut rng);
        let strips = a.split_rows(2).unwrap();
        assert_eq!(
            Matrix::from_blocks(&[vec![strips[0].clone()], vec![strips[1].clone()]]).unwrap(),
            a
        );
        let strips = a.split_cols(3).unwrap();
        assert_eq!(Matrix::from_blocks(&[strips]).unwrap(), a);
        assert!(matches!(a.split_rows(3), Err(Error::PartitionIndivisible(_))));
        assert_eq!(a.padded(5, 7).truncated(4, 6), a);
    }

    #[test]
    fn csv_round_trip_and_rejects() {
        let f = gf(4);
        let a = Matrix::from_codes(2, 3, &[0, 1, 2, 3, 2, 1]).unwrap();
        let text = a.to_csv(&f);
        assert!(text.starts_with("# gf 2 2 modulus=1,1,1\n"));
        let (f2, b) = Matrix::from_csv(&text).unwrap();
        assert_eq!((f2, b), (f.clone(), a));
        assert!(Matrix::from_csv("# gf 2 2 modulus=1,1,1\n0,4\n").is_err());
        assert!(Matrix::from_csv("# gf 2 2 modulus=1,1,1\n0,1\n1\n").is_err());
    }

    #[test]
    fn right_inverse_of_identity_and_vandermonde() {
        let f = gf(4);
        let (r, _) = right_inverse(&f, &Matrix::identity(3)).unwrap();
        assert_eq!(r, Matrix::identity(3));

        // Rows 1, x, x² at x ∈ {0, 1, 2}.
        let xs = [0u32, 1, 2];
        let mut g = Matrix::zeros(3, 3);
        for (j, &x) in xs.iter().enumerate() {
            for i in 0..3 {
                g.set(i, j, f.pow(FieldElement::from_code(x), i as u64));
            }
        }
        let (r, _) = right_inverse(&f, &g).unwrap();
        assert_eq!(g.mul(&f, &r).unwrap().0, Matrix::identity(3));
    }

    #[test]
    fn wide_right_inverse_and_rank_deficiency() {
        let f = gf(5);
        let mut rng = Xoshiro256PlusPlus::seed_from_u64(9);
        let g = Matrix::random(&f, 3, 6, &mut rng);
        let (r, _) = right_inverse(&f, &g).unwrap();
        assert_eq!(g.mul(&f, &r).unwrap().0, Matrix::identity(3));

        let dup = Matrix::from_codes(2, 3, &[1, 2, 3, 2, 4, 1]).unwrap();
        assert!(matches!(right_inverse(&f, &dup), Err(Error::RankDeficient)));
    }
}
