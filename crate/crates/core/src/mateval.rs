//! Exact evaluation on tuples of square matrices and the vec/Kronecker
//! bridge between bipartite polynomials and matrix equations.

use rand::Rng;
use serde_json::Value;

use crate::bipartite::{hypo_jacobian, hypomatrix_rep, BipartiteMatrix, BipartitePoly, Hyporealization};
use crate::coeff::Coefficient;
use crate::deriv::free_derivative;
use crate::error::{AlgebraError, ParseError};
use crate::freealg::{FreePoly, FreePolyMap, Kind, Word};
use crate::matrix::ScalarMatrix;

/// `g` square matrices of a common size `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixTuple {
    n: usize,
    mats: Vec<ScalarMatrix>,
}

impl MatrixTuple {
    pub fn new(mats: Vec<ScalarMatrix>) -> Result<Self, AlgebraError> {
        let n = mats.first().map_or(0, ScalarMatrix::rows);
        for m in &mats {
            if m.rows() != n || m.cols() != n {
                return Err(AlgebraError::Dimension(format!(
                    "expected {n}x{n} matrices, found {}x{}",
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(MatrixTuple { n, mats })
    }

    /// A tuple of `1 x 1` matrices.
    pub fn scalars(values: &[Coefficient]) -> Self {
        MatrixTuple {
            n: 1,
            mats: values.iter().map(|v| ScalarMatrix::from_vec(1, 1, vec![v.clone()])).collect(),
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.mats.len()
    }

    pub fn matrices(&self) -> &[ScalarMatrix] {
        &self.mats
    }

    pub fn get(&self, i: usize) -> &ScalarMatrix {
        &self.mats[i]
    }

    pub fn transpose(&self) -> Self {
        MatrixTuple {
            n: self.n,
            mats: self.mats.iter().map(ScalarMatrix::transpose).collect(),
        }
    }

    /// `X ⊕ Y`, block diagonal per component.
    pub fn direct_sum(&self, other: &MatrixTuple) -> Result<Self, AlgebraError> {
        check_arity(self.arity(), other.arity())?;
        let (a, b) = (self.n, other.n);
        let mats = self
            .mats
            .iter()
            .zip(&other.mats)
            .map(|(x, y)| {
                ScalarMatrix::from_blocks(&[
                    vec![x.clone(), ScalarMatrix::zeros(a, b)],
                    vec![ScalarMatrix::zeros(b, a), y.clone()],
                ])
            })
            .collect();
        MatrixTuple::new(mats)
    }

    /// Random integer entries in `-3..=3`.
    pub fn random(rng: &mut impl Rng, g: usize, n: usize) -> Self {
        let mats = (0..g)
            .map(|_| {
                ScalarMatrix::from_vec(
                    n,
                    n,
                    (0..n * n).map(|_| Coefficient::from_integer(rng.gen_range(-3..=3))).collect(),
                )
            })
            .collect();
        MatrixTuple { n, mats }
    }

    /// JSON: an array of matrices, each an array of rows of coefficient
    /// strings.
    pub fn to_json(&self) -> Value {
        Value::Array(self.mats.iter().map(matrix_to_json).collect())
    }

    pub fn from_json(value: &Value) -> Result<Self, AlgebraError> {
        let arr = value
            .as_array()
            .ok_or_else(|| json_error("a matrix tuple is a JSON array of matrices"))?;
        let mats = arr.iter().map(matrix_from_json).collect::<Result<Vec<_>, _>>()?;
        MatrixTuple::new(mats)
    }
}

fn json_error(msg: &str) -> AlgebraError {
    AlgebraError::Parse(ParseError::new(msg, 1, 1))
}

pub fn matrix_to_json(m: &ScalarMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|c| Value::String(c.to_json_string())).collect()))
            .collect(),
    )
}

pub fn matrix_from_json(value: &Value) -> Result<ScalarMatrix, AlgebraError> {
    let rows = value
        .as_array()
        .ok_or_else(|| json_error("a matrix is a JSON array of rows"))?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| json_error("a matrix row is a JSON array"))?;
        let mut r = Vec::with_capacity(row.len());
        for entry in row {
            let c = match entry {
                Value::String(s) => s.parse::<Coefficient>()?,
                Value::Number(n) if n.is_i64() => Coefficient::from_integer(n.as_i64().expect("checked")),
                _ => return Err(json_error("matrix entries are strings such as \"1/2\" or \"1+2 i\"")),
            };
            r.push(c);
        }
        out.push(r);
    }
    if out.iter().any(|r| r.len() != out.len()) {
        return Err(AlgebraError::Dimension("matrices must be square".into()));
    }
    Ok(ScalarMatrix::from_rows(out))
}

fn check_arity(expected: usize, found: usize) -> Result<(), AlgebraError> {
    if expected == found {
        Ok(())
    } else {
        Err(AlgebraError::ArityMismatch { expected, found })
    }
}

fn eval_word(w: &Word, n: usize, lookup: &impl Fn(crate::freealg::Letter) -> Result<ScalarMatrix, AlgebraError>) -> Result<ScalarMatrix, AlgebraError> {
    let mut acc = ScalarMatrix::identity(n);
    for &l in w.letters() {
        acc = acc.mul(&lookup(l)?)?;
    }
    Ok(acc)
}

/// Evaluates `f` with each listed letter kind bound to a tuple; all tuples
/// must share one size.
pub fn eval_poly_with(f: &FreePoly, bindings: &[(Kind, &MatrixTuple)]) -> Result<ScalarMatrix, AlgebraError> {
    let n = bindings.first().map_or(1, |(_, t)| t.size());
    if bindings.iter().any(|(_, t)| t.size() != n) {
        return Err(AlgebraError::SizeMismatch);
    }
    let lookup = |l: crate::freealg::Letter| {
        let (_, t) = bindings
            .iter()
            .find(|(k, _)| *k == l.kind)
            .ok_or(AlgebraError::UnboundLetter(l))?;
        t.mats
            .get(l.slot())
            .cloned()
            .ok_or(AlgebraError::LetterOutOfRange { letter: l, size: t.arity() })
    };
    let mut out = ScalarMatrix::zeros(n, n);
    for (w, c) in f.terms() {
        out = out.add(&eval_word(w, n, &lookup)?.scale(c))?;
    }
    Ok(out)
}

/// `f(X) = Σ c_w X^w`.
pub fn eval_poly(f: &FreePoly, x: &MatrixTuple) -> Result<ScalarMatrix, AlgebraError> {
    eval_poly_with(f, &[(Kind::X, x)])
}

pub fn eval_map(p: &FreePolyMap, x: &MatrixTuple) -> Result<MatrixTuple, AlgebraError> {
    MatrixTuple::new(p.iter().map(|c| eval_poly(c, x)).collect::<Result<_, _>>()?)
}

/// Row-major flattening.
pub fn vec(a: &ScalarMatrix) -> Vec<Coefficient> {
    a.entries().cloned().collect()
}

pub fn unvec(v: &[Coefficient], n: usize) -> ScalarMatrix {
    ScalarMatrix::from_vec(n, n, v.to_vec())
}

/// Concatenated `vec` of every matrix in a tuple, as a `1 x g n^2` row.
pub fn vec_tuple(t: &MatrixTuple) -> ScalarMatrix {
    let data: Vec<Coefficient> = t.mats.iter().flat_map(vec).collect();
    ScalarMatrix::from_vec(1, data.len(), data)
}

/// `Σ c · u(Yᵀ) ⊗ v(Y)`; letters are looked up by index whatever their kind.
pub fn eval_bipartite(b: &BipartitePoly, y: &MatrixTuple) -> Result<ScalarMatrix, AlgebraError> {
    let n = y.size();
    let yt = y.transpose();
    let by_index = |t: &MatrixTuple| {
        let t = t.clone();
        move |l: crate::freealg::Letter| {
            t.mats
                .get(l.slot())
                .cloned()
                .ok_or(AlgebraError::LetterOutOfRange { letter: l, size: t.arity() })
        }
    };
    let (left, right) = (by_index(&yt), by_index(y));
    let mut out = ScalarMatrix::zeros(n * n, n * n);
    for ((u, v), c) in b.terms() {
        let term = eval_word(u, n, &left)?.kron(&eval_word(v, n, &right)?);
        out = out.add(&term.scale(c))?;
    }
    Ok(out)
}

/// Block matrix of [`eval_bipartite`] values.
pub fn eval_bipartite_matrix(m: &BipartiteMatrix, y: &MatrixTuple) -> Result<ScalarMatrix, AlgebraError> {
    let blocks = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| eval_bipartite(m.get(i, j), y)).collect())
        .collect::<Result<Vec<Vec<_>>, _>>()?;
    Ok(ScalarMatrix::from_blocks(&blocks))
}

/// Checks the top-right block of `f([[X, H], [0, X]])` equals `Df(X)[H]`.
pub fn block_derivative_check(f: &FreePoly, x: &MatrixTuple, h: &MatrixTuple) -> Result<bool, AlgebraError> {
    check_arity(x.arity(), h.arity())?;
    if x.size() != h.size() {
        return Err(AlgebraError::SizeMismatch);
    }
    let n = x.size();
    let blocks = MatrixTuple::new(
        x.mats
            .iter()
            .zip(&h.mats)
            .map(|(xi, hi)| ScalarMatrix::from_blocks(&[vec![xi.clone(), hi.clone()], vec![ScalarMatrix::zeros(n, n), xi.clone()]]))
            .collect(),
    )?;
    let big = eval_poly(f, &blocks)?;
    let direct = eval_poly_with(&free_derivative(f), &[(Kind::X, x), (Kind::Y, h)])?;
    Ok(big.block(0, n, n, n) == direct && big.block(0, 0, n, n) == big.block(n, n, n, n))
}

/// Checks `vec(Dp(Y)[X]) = vec(X) · Ĵ_p(Yᵀ⊗I, I⊗Y)`.
pub fn hypo_jacobian_vec_check(p: &FreePolyMap, x: &MatrixTuple, y: &MatrixTuple) -> Result<bool, AlgebraError> {
    check_arity(p.arity(), x.arity())?;
    check_arity(p.arity(), y.arity())?;
    // Dp(base)[direction] with base letters x and direction letters y
    let lhs = MatrixTuple::new(
        p.iter()
            .map(|c| eval_poly_with(&free_derivative(c), &[(Kind::X, y), (Kind::Y, x)]))
            .collect::<Result<_, _>>()?,
    )?;
    let jhat = eval_bipartite_matrix(&hypo_jacobian(p)?, y)?;
    Ok(vec_tuple(x).mul(&jhat)? == vec_tuple(&lhs))
}

/// One component of the solution of a hyporealization at `X`, from
/// `vec(a(X)) · (I - Φ(Xᵀ⊗I, I⊗X)) = vec(𝔞(X))`; `None` when the system is
/// singular at `X`.
pub fn hyporational_eval(
    a: &Hyporealization,
    x: &MatrixTuple,
    component: usize,
) -> Result<Option<ScalarMatrix>, AlgebraError> {
    let h = a.arity();
    if component >= h {
        return Err(AlgebraError::ArityMismatch {
            expected: h,
            found: component + 1,
        });
    }
    let (base, phi) = hypomatrix_rep(a);
    let n = x.size();
    let rhs = vec_tuple(&eval_map(&base, x)?);
    let system = ScalarMatrix::identity(h * n * n).sub(&eval_bipartite_matrix(&phi, x)?)?;
    let Some(sol) = system.solve_left(rhs.row(0)) else {
        return Ok(None);
    };
    let nn = n * n;
    Ok(Some(unvec(&sol[component * nn..(component + 1) * nn], n)))
}

/// `X ≠ X'` and `p(X) = p(X')`.
pub fn collision_check(p: &FreePolyMap, x: &MatrixTuple, x2: &MatrixTuple) -> Result<bool, AlgebraError> {
    if x.size() != x2.size() || x.arity() != x2.arity() {
        return Err(AlgebraError::SizeMismatch);
    }
    if x == x2 {
        return Ok(false);
    }
    Ok(eval_map(p, x)? == eval_map(p, x2)?)
}

/// Floating-point evaluation for display; entries as `(re, im)`.
pub fn eval_poly_float(f: &FreePoly, x: &MatrixTuple) -> Result<Vec<Vec<(f64, f64)>>, AlgebraError> {
    type C = (f64, f64);
    let n = x.size();
    let to_f = |m: &ScalarMatrix| -> Vec<Vec<C>> { (0..n).map(|i| m.row(i).iter().map(Coefficient::to_f64).collect()).collect() };
    let mats: Vec<Vec<Vec<C>>> = x.mats.iter().map(to_f).collect();
    let mul = |a: &Vec<Vec<C>>, b: &Vec<Vec<C>>| -> Vec<Vec<C>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (0..n).fold((0.0, 0.0), |acc, k| {
                            let (p, q) = (a[i][k], b[k][j]);
                            (acc.0 + p.0 * q.0 - p.1 * q.1, acc.1 + p.0 * q.1 + p.1 * q.0)
                        })
                    })
                    .collect()
            })
            .collect()
    };
    let mut out = vec![vec![(0.0, 0.0); n]; n];
    for (w, c) in f.terms() {
        let mut acc: Vec<Vec<C>> = (0..n).map(|i| (0..n).map(|j| if i == j { (1.0, 0.0) } else { (0.0, 0.0) }).collect()).collect();
        for l in w.letters() {
            if l.kind != Kind::X {
                return Err(AlgebraError::UnboundLetter(*l));
            }
            let m = mats
                .get(l.slot())
                .ok_or(AlgebraError::LetterOutOfRange { letter: *l, size: x.arity() })?;
            acc = mul(&acc, m);
        }
        let c = c.to_f64();
        for i in 0..n {
            for j in 0..n {
                let a = acc[i][j];
                out[i][j].0 += c.0 * a.0 - c.1 * a.1;
                out[i][j].1 += c.0 * a.1 + c.1 * a.0;
            }
        }
    }
    Ok(out)
}
