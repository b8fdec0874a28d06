use crate::field::FiniteField;

/// A subspace of `F_q^width` in reduced row-echelon form.
///
/// Pivots are the lowest nonzero index of each row (for coefficient vectors
/// of truncated power series this is the valuation), pivot entries are 1,
/// pivot columns are zero in every other row and rows are sorted by pivot.
/// The form is unique per subspace, so derived equality and ordering compare
/// subspaces.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Echelon {
    width: usize,
    pivots: Vec<usize>,
    data: Vec<u8>,
}

impl Echelon {
    pub fn zero(width: usize) -> Self {
        Self {
            width,
            pivots: Vec::new(),
            data: Vec::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn row(&self, r: usize) -> &[u8] {
        &self.data[r * self.width..(r + 1) * self.width]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.data.chunks(self.width.max(1)).take(self.dim())
    }

    /// Subtracts the span from `v` in place, leaving zeros on pivot columns.
    pub fn reduce(&self, field: &FiniteField, v: &mut [u8]) {
        for (r, &p) in self.pivots.iter().enumerate() {
            let c = v[p];
            if c != 0 {
                let row = &self.data[r * self.width..(r + 1) * self.width];
                for (x, &y) in v.iter_mut().zip(row).skip(p) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
    }

    pub fn contains(&self, field: &FiniteField, v: &[u8]) -> bool {
        let mut w = v.to_vec();
        self.reduce(field, &mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already inside.
    pub fn insert(&mut self, field: &FiniteField, mut v: Vec<u8>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        self.reduce(field, &mut v);
        let Some(lead) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = field.inv(v[lead]);
        for x in v.iter_mut().skip(lead) {
            *x = field.mul(*x, s);
        }
        let w = self.width;
        for r in 0..self.pivots.len() {
            let c = self.data[r * w + lead];
            if c != 0 {
                let row = &mut self.data[r * w..(r + 1) * w];
                for (x, &y) in row[lead..].iter_mut().zip(&v[lead..]) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        let at = pos * w;
        self.data.splice(at..at, v);
        true
    }
}

/// Basis of `{x : Σ x_r·rows[r] = 0}`.
pub fn left_kernel(field: &FiniteField, rows: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let m = rows.len();
    let mut pivot_rows: Vec<(usize, Vec<u8>, Vec<u8>)> = Vec::new();
    let mut kernel = Vec::new();
    for (r, row) in rows.iter().enumerate() {
        let mut left = row.clone();
        let mut right = vec![0u8; m];
        right[r] = 1;
        for (p, pl, pr) in &pivot_rows {
            let c = left[*p];
            if c != 0 {
                for (x, &y) in left.iter_mut().zip(pl) {
                    *x = field.sub(*x, field.mul(c, y));
                }
                for (x, &y) in right.iter_mut().zip(pr) {
                    *x = field.sub(*x, field.mul(c, y));
                }
            }
        }
        match left.iter().position(|&x| x != 0) {
            None => kernel.push(right),
            Some(p) => {
                let s = field.inv(left[p]);
                left.iter_mut().for_each(|x| *x = field.mul(*x, s));
                right.iter_mut().for_each(|x| *x = field.mul(*x, s));
                pivot_rows.push((p, left, right));
            }
        }
    }
    kernel
}

/// Every nonzero combination of `basis` whose first nonzero coefficient is 1.
pub fn projective_points(field: &FiniteField, basis: &[Vec<u8>]) -> Vec<Vec<u8>> {
    let k = basis.len();
    if k == 0 {
        return Vec::new();
    }
    let width = basis[0].len();
    let q = field.order() as usize;
    let mut out = Vec::new();
    for lead in 0..k {
        // coefficients: 1 at `lead`, free after it
        let free = k - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = basis[lead].clone();
            let mut rem = idx;
            for b in &basis[lead + 1..] {
                let c = (rem % q) as u8;
                rem /= q;
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = field.add(*x, field.mul(c, y));
                    }
                }
            }
            debug_assert_eq!(v.len(), width);
            out.push(v);
        }
    }
    out
}
