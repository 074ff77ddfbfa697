//! 2×2 matrices over a tower.

use std::fmt;
use std::sync::Arc;

use crate::tower::{Tower, TowerElem, TowerError};

#[derive(Clone, PartialEq, Eq)]
pub struct Mat2 {
    pub m: [[TowerElem; 2]; 2],
}

impl Mat2 {
    pub fn new(a: TowerElem, b: TowerElem, c: TowerElem, d: TowerElem) -> Self {
        Mat2 { m: [[a, b], [c, d]] }
    }

    pub fn identity(tw: &Arc<Tower>) -> Self {
        Mat2::new(tw.one(), tw.zero(), tw.zero(), tw.one())
    }

    pub fn zero(tw: &Arc<Tower>) -> Self {
        Mat2::new(tw.zero(), tw.zero(), tw.zero(), tw.zero())
    }

    pub fn tower(&self) -> &Arc<Tower> {
        self.m[0][0].tower()
    }

    pub fn get(&self, i: usize, j: usize) -> &TowerElem {
        &self.m[i][j]
    }

    fn map(&self, f: impl Fn(&TowerElem) -> TowerElem) -> Mat2 {
        let m = &self.m;
        Mat2::new(f(&m[0][0]), f(&m[0][1]), f(&m[1][0]), f(&m[1][1]))
    }

    fn zip(&self, o: &Mat2, f: impl Fn(&TowerElem, &TowerElem) -> TowerElem) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        Mat2::new(f(&a[0][0], &b[0][0]), f(&a[0][1], &b[0][1]), f(&a[1][0], &b[1][0]), f(&a[1][1], &b[1][1]))
    }

    pub fn add(&self, o: &Mat2) -> Mat2 {
        self.zip(o, |x, y| x + y)
    }

    pub fn sub(&self, o: &Mat2) -> Mat2 {
        self.zip(o, |x, y| x - y)
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.m, &o.m);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Mat2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }

    pub fn scale(&self, k: &TowerElem) -> Mat2 {
        self.map(|x| x * k)
    }

    pub fn neg(&self) -> Mat2 {
        self.map(|x| -x)
    }

    pub fn det(&self) -> TowerElem {
        let m = &self.m;
        &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0])
    }

    pub fn trace(&self) -> TowerElem {
        &self.m[0][0] + &self.m[1][1]
    }

    pub fn inv(&self) -> Result<Mat2, TowerError> {
        let di = self.det().inv()?;
        let m = &self.m;
        Ok(Mat2::new(&m[1][1] * &di, &(-&m[0][1]) * &di, &(-&m[1][0]) * &di, &m[0][0] * &di))
    }

    /// Entrywise derivative.
    pub fn derive(&self) -> Mat2 {
        self.map(|x| x.derive())
    }

    /// `M' + M·P - P·M`.
    pub fn d_p(&self, p: &Mat2) -> Mat2 {
        self.derive().add(&self.mul(p)).sub(&p.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.m.iter().flatten().all(|x| x.is_zero())
    }

    /// Carry every entry with `f` (e.g. into an extended tower).
    pub fn map_entries(&self, f: impl Fn(&TowerElem) -> TowerElem) -> Mat2 {
        self.map(f)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}
