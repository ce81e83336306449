use std::sync::Arc;

use num_complex::Complex64 as C64;

use super::frame::Frame;
use crate::chart::RealChart;
use crate::error::{Error, Result};
use crate::jet::Jet;
use crate::linalg::Mat;

type OpFn = Arc<dyn Fn(&Frame, &Jet) -> Result<Jet> + Send + Sync>;
type BuildFn = Arc<dyn Fn(&Frame) -> Result<Mat<Jet>> + Send + Sync>;

/// Scalar operator; `None` is the zero operator.
#[derive(Clone)]
pub struct Op {
    order: usize,
    f: Option<OpFn>,
}

impl Op {
    pub fn zero() -> Op {
        Op { order: 0, f: None }
    }

    pub fn identity() -> Op {
        Op {
            order: 0,
            f: Some(Arc::new(|_, j| Ok(j.clone()))),
        }
    }

    pub fn from_fn(
        order: usize,
        f: impl Fn(&Frame, &Jet) -> Result<Jet> + Send + Sync + 'static,
    ) -> Op {
        Op {
            order,
            f: Some(Arc::new(f)),
        }
    }

    pub fn partial(idx: usize) -> Op {
        Op::from_fn(1, move |_, j| j.partial(idx))
    }

    /// `Σ c_i ∂/∂t_{idx_i}`.
    pub fn first_order(terms: Vec<(usize, C64)>) -> Op {
        Op::from_fn(1, move |_, j| {
            let mut acc: Option<Jet> = None;
            for &(idx, c) in &terms {
                let d = j.partial(idx)?.scale(c);
                acc = Some(match acc {
                    None => d,
                    Some(a) => a + d,
                });
            }
            acc.ok_or_else(|| Error::Invalid("empty first-order operator".into()))
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.f.is_none()
    }

    pub fn apply(&self, frame: &Frame, f: &Jet) -> Result<Jet> {
        if f.order() < self.order {
            return Err(Error::JetOrder {
                have: f.order(),
                need: self.order,
            });
        }
        match &self.f {
            None => Ok(f.truncate(f.order() - self.order).scale(C64::new(0.0, 0.0))),
            Some(g) => g(frame, f),
        }
    }

    /// `self ∘ o`.
    pub fn compose(&self, o: &Op) -> Op {
        if self.is_zero() || o.is_zero() {
            return Op::zero();
        }
        let (a, b) = (self.clone(), o.clone());
        Op::from_fn(a.order + b.order, move |fr, j| {
            a.apply(fr, &b.apply(fr, j)?)
        })
    }

    pub fn add(&self, o: &Op) -> Op {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let (a, b) = (self.clone(), o.clone());
        Op::from_fn(a.order.max(b.order), move |fr, j| {
            Ok(a.apply(fr, j)? + b.apply(fr, j)?)
        })
    }

    pub fn sub(&self, o: &Op) -> Op {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Op {
        if self.is_zero() || c == C64::new(0.0, 0.0) {
            return Op::zero();
        }
        let a = self.clone();
        Op::from_fn(a.order, move |fr, j| Ok(a.apply(fr, j)?.scale(c)))
    }

    /// `c · self` with `c` the scalar coefficient of a 1x1 coefficient matrix.
    pub fn times(&self, c: &CoefMatrix) -> Op {
        CoefMatrix::mul_op(c, &OpMatrix::scalar(self.clone()))
            .entry(0, 0)
            .clone()
    }
}

/// `Σ A_lb B_kc L_bk R_cl`: the trace `tr(A L B R)` with both coefficient
/// matrices kept to the left of the operators. `A`, `B` are `p × q` and `L`,
/// `R` are `q × p`.
pub fn crossed_trace(a: &CoefMatrix, l_ops: &OpMatrix, b: &CoefMatrix, r_ops: &OpMatrix) -> Op {
    assert_eq!(
        (a.rows, a.cols),
        (b.rows, b.cols),
        "coefficient shapes differ"
    );
    assert_eq!(
        (l_ops.rows(), l_ops.cols()),
        (a.cols, a.rows),
        "left operator shape"
    );
    assert_eq!(
        (r_ops.rows(), r_ops.cols()),
        (a.cols, a.rows),
        "right operator shape"
    );
    let (p, q) = (a.rows, a.cols);
    let mut acc = Op::zero();
    for l in 0..p {
        for bi in 0..q {
            for k in 0..p {
                for c in 0..q {
                    let (a, b) = (a.clone(), b.clone());
                    let key = format!("{}[{l},{bi}]*{}[{k},{c}]", a.key, b.key);
                    let coef = CoefMatrix::new(&key, 1, 1, move |fr| {
                        let x = &a.eval(fr)?[(l, bi)] * &b.eval(fr)?[(k, c)];
                        Ok(Mat::from_fn(1, 1, &x, |_, _| x.clone()))
                    });
                    let term = l_ops.entry(bi, k).compose(r_ops.entry(c, l));
                    acc = acc.add(&term.times(&coef));
                }
            }
        }
    }
    acc
}

/// Matrix of coefficients computed from the frame and memoized under `key`.
#[derive(Clone)]
pub struct CoefMatrix {
    rows: usize,
    cols: usize,
    key: Arc<str>,
    build: BuildFn,
}

impl CoefMatrix {
    pub fn new(
        key: &str,
        rows: usize,
        cols: usize,
        build: impl Fn(&Frame) -> Result<Mat<Jet>> + Send + Sync + 'static,
    ) -> Self {
        CoefMatrix {
            rows,
            cols,
            key: Arc::from(key),
            build: Arc::new(build),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn key(&self) -> &str {
        &self.key
    }

    pub fn transpose(&self) -> CoefMatrix {
        let c = self.clone();
        CoefMatrix::new(
            &format!("t({})", self.key),
            self.cols,
            self.rows,
            move |fr| Ok(c.eval(fr)?.transpose()),
        )
    }

    pub fn eval(&self, frame: &Frame) -> Result<std::rc::Rc<Mat<Jet>>> {
        let b = self.build.clone();
        let m = frame.memo(&self.key, &move |fr| b(fr))?;
        if m.shape() != (self.rows, self.cols) {
            return Err(Error::Shape(format!(
                "coefficient {} has shape {:?}",
                self.key,
                m.shape()
            )));
        }
        Ok(m)
    }

    /// `(C B)_ij = Σ_k C_ik · B_kj`.
    pub fn mul_op(c: &CoefMatrix, b: &OpMatrix) -> OpMatrix {
        assert_eq!(c.cols, b.rows, "coefficient/operator shape mismatch");
        let mut entries = Vec::with_capacity(c.rows * b.cols);
        for i in 0..c.rows {
            for j in 0..b.cols {
                let col: Vec<(usize, Op)> = (0..b.rows)
                    .filter(|&k| !b.entry(k, j).is_zero())
                    .map(|k| (k, b.entry(k, j).clone()))
                    .collect();
                if col.is_empty() {
                    entries.push(Op::zero());
                    continue;
                }
                let order = col.iter().map(|(_, o)| o.order()).max().unwrap_or(0);
                let cm = c.clone();
                entries.push(Op::from_fn(order, move |fr, jet| {
                    let coef = cm.eval(fr)?;
                    let mut acc: Option<Jet> = None;
                    for (k, op) in &col {
                        let ck = &coef[(i, *k)];
                        if ck.coeffs().iter().all(|z| *z == C64::new(0.0, 0.0)) {
                            continue;
                        }
                        let term = ck * &op.apply(fr, jet)?;
                        acc = Some(match acc {
                            None => term,
                            Some(a) => a + term,
                        });
                    }
                    Ok(acc.unwrap_or_else(|| {
                        jet.truncate(jet.order() - order).scale(C64::new(0.0, 0.0))
                    }))
                }));
            }
        }
        OpMatrix {
            rows: c.rows,
            cols: b.cols,
            entries,
        }
    }
}

/// Matrix of operators with the product `(AB)_ij = Σ_k A_ik ∘ B_kj`.
#[derive(Clone)]
pub struct OpMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Op>,
}

impl OpMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Op) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        OpMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn scalar(op: Op) -> Self {
        OpMatrix {
            rows: 1,
            cols: 1,
            entries: vec![op],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Op {
        &self.entries[i * self.cols + j]
    }

    pub fn order(&self) -> usize {
        self.entries.iter().map(|e| e.order()).max().unwrap_or(0)
    }

    /// `∂/∂Ω` (or `∂/∂W`): entry `(i,j)` is `(1+δ_ij)/2 · ∂/∂ω_ij`.
    pub fn d_sym(chart: RealChart) -> Self {
        Self::wirtinger_sym(chart, -1.0)
    }

    /// `∂/∂Ω̄` (or `∂/∂W̄`).
    pub fn d_sym_bar(chart: RealChart) -> Self {
        Self::wirtinger_sym(chart, 1.0)
    }

    fn wirtinger_sym(chart: RealChart, sign: f64) -> Self {
        OpMatrix::from_fn(chart.n(), chart.n(), |i, j| {
            let w = if i == j { 0.5 } else { 0.25 };
            Op::first_order(vec![
                (chart.x(i, j), C64::new(w, 0.0)),
                (chart.y(i, j), C64::new(0.0, sign * w)),
            ])
        })
    }

    /// `∂/∂Z` (or `∂/∂η`): `n × m` with entry `(j,k) = ∂/∂z_kj`.
    pub fn d_rect(chart: RealChart) -> Self {
        Self::wirtinger_rect(chart, -1.0)
    }

    /// `∂/∂Z̄` (or `∂/∂η̄`).
    pub fn d_rect_bar(chart: RealChart) -> Self {
        Self::wirtinger_rect(chart, 1.0)
    }

    fn wirtinger_rect(chart: RealChart, sign: f64) -> Self {
        OpMatrix::from_fn(chart.n(), chart.m(), |j, k| {
            Op::first_order(vec![
                (chart.u(k, j), C64::new(0.5, 0.0)),
                (chart.v(k, j), C64::new(0.0, sign * 0.5)),
            ])
        })
    }

    pub fn mul(&self, o: &OpMatrix) -> OpMatrix {
        assert_eq!(self.cols, o.rows, "operator matrix product shape mismatch");
        OpMatrix::from_fn(self.rows, o.cols, |i, j| {
            (0..self.cols).fold(Op::zero(), |acc, k| {
                acc.add(&self.entry(i, k).compose(o.entry(k, j)))
            })
        })
    }

    pub fn transpose(&self) -> OpMatrix {
        OpMatrix::from_fn(self.cols, self.rows, |i, j| self.entry(j, i).clone())
    }

    pub fn add(&self, o: &OpMatrix) -> OpMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (o.rows, o.cols),
            "operator matrix sum shape mismatch"
        );
        OpMatrix::from_fn(self.rows, self.cols, |i, j| {
            self.entry(i, j).add(o.entry(i, j))
        })
    }

    pub fn sub(&self, o: &OpMatrix) -> OpMatrix {
        self.add(&o.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> OpMatrix {
        OpMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).scale(c))
    }

    /// Coefficient matrix applied from the left.
    pub fn left(&self, c: &CoefMatrix) -> OpMatrix {
        CoefMatrix::mul_op(c, self)
    }

    /// `A · op` entry-wise, i.e. `A_ij ∘ op`.
    pub fn then(&self, op: &Op) -> OpMatrix {
        OpMatrix::from_fn(self.rows, self.cols, |i, j| self.entry(i, j).compose(op))
    }

    /// `(A C)_ij = Σ_k C_kj · A_ik`, the coefficients again outside.
    pub fn right(&self, c: &CoefMatrix) -> OpMatrix {
        self.transpose().left(&c.transpose()).transpose()
    }

    pub fn trace(&self) -> Op {
        (0..self.rows.min(self.cols)).fold(Op::zero(), |acc, i| acc.add(self.entry(i, i)))
    }

    /// Leibniz expansion; each product is composed left to right.
    pub fn det(&self) -> Result<Op> {
        if self.rows != self.cols {
            return Err(Error::Shape(
                "determinant of a non-square operator matrix".into(),
            ));
        }
        let n = self.rows;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut acc = Op::zero();
        permutations(&mut perm, 0, &mut |p, sign| {
            let term = (1..n).fold(self.entry(0, p[0]).clone(), |t, i| {
                t.compose(self.entry(i, p[i]))
            });
            acc = acc.add(&term.scale(C64::new(sign, 0.0)));
        });
        if n == 0 {
            return Ok(Op::identity());
        }
        Ok(acc)
    }
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize], f64)) {
    fn sign_of(p: &[usize]) -> f64 {
        let mut s = 1.0;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    s = -s;
                }
            }
        }
        s
    }
    if k == p.len() {
        visit(p, sign_of(p));
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}
