//! Exact normalization of invariant forms over R, C and H.

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

use super::EmbError;
use crate::exact_linalg::scalar::rational_sqrt;
use crate::exact_linalg::{q, qf, Rational};
use crate::real_forms::quaternion::{Quat, QuatMat};
use crate::real_forms::Field;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    /// symmetric, Hermitian or quaternionic Hermitian
    Sym,
    Skew,
    /// quaternionic skew-Hermitian
    SkewHerm,
}

/// A nondegenerate form x ↦ x^• F y on K^d, where x^• is x^* (sesquilinear) or x^T.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    pub field: Field,
    pub sesqui: bool,
    pub kind: Kind,
    pub matrix: QuatMat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unit {
    Pos,
    Neg,
    /// [[0, 1], [-1, 0]]
    Pair,
    /// the 1×1 quaternionic form j
    J,
}

impl Unit {
    pub fn size(self) -> usize {
        if self == Unit::Pair {
            2
        } else {
            1
        }
    }
}

impl FormSpec {
    pub fn new(field: Field, sesqui: bool, kind: Kind, matrix: QuatMat) -> Self {
        // over R the two conventions agree; keep one
        let sesqui = if field == Field::R { true } else { sesqui };
        FormSpec {
            field,
            sesqui,
            kind,
            matrix,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows
    }

    /// Shape label (field, sesqui, kind) that must agree for two forms to be compared.
    pub fn shape(&self) -> (Field, bool, Kind) {
        (self.field, self.sesqui, self.kind)
    }

    pub fn neg(&self) -> FormSpec {
        FormSpec {
            matrix: self.matrix.neg(),
            ..self.clone()
        }
    }

    fn dagger(&self, x: &Quat) -> Quat {
        if self.sesqui {
            x.conj()
        } else {
            x.clone()
        }
    }

    pub fn eval(&self, x: &[Quat], y: &[Quat]) -> Quat {
        let n = self.dim();
        let mut acc = Quat::zero();
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            let xa = self.dagger(&x[a]);
            for b in 0..n {
                let f = self.matrix.get(a, b);
                if f.is_zero() || y[b].is_zero() {
                    continue;
                }
                acc = &acc + &(&(&xa * f) * &y[b]);
            }
        }
        acc
    }

    /// T^• F T
    pub fn congruent(&self, t: &QuatMat) -> QuatMat {
        let td = if self.sesqui {
            t.adjoint()
        } else {
            t.transpose()
        };
        td.mul(&self.matrix).mul(t)
    }

    /// Whether X preserves the form infinitesimally: X^• F + F X = 0.
    pub fn preserved_by(&self, x: &QuatMat) -> bool {
        let xd = if self.sesqui {
            x.adjoint()
        } else {
            x.transpose()
        };
        xd.mul(&self.matrix).add(&self.matrix.mul(x)).is_zero()
    }

    /// Number of Pos and Neg units (for Sym kinds).
    pub fn inertia(&self) -> Result<(usize, usize), EmbError> {
        let (_, units) = normalize(self)?;
        Ok((
            units.iter().filter(|u| **u == Unit::Pos).count(),
            units.iter().filter(|u| **u == Unit::Neg).count(),
        ))
    }
}

pub fn unit_matrix(units: &[Unit]) -> QuatMat {
    let n: usize = units.iter().map(|u| u.size()).sum();
    let mut m = QuatMat::zeros(n, n);
    let mut k = 0;
    for u in units {
        match u {
            Unit::Pos => m.set(k, k, Quat::one()),
            Unit::Neg => m.set(k, k, Quat::ints(-1, 0, 0, 0)),
            Unit::J => m.set(k, k, Quat::j()),
            Unit::Pair => {
                m.set(k, k + 1, Quat::one());
                m.set(k + 1, k, Quat::ints(-1, 0, 0, 0));
            }
        }
        k += u.size();
    }
    m
}

fn add_scaled(x: &[Quat], y: &[Quat], c: &Quat) -> Vec<Quat> {
    x.iter().zip(y).map(|(a, b)| a + &(b * c)).collect()
}

fn scale_right(x: &[Quat], c: &Quat) -> Vec<Quat> {
    x.iter().map(|a| a * c).collect()
}

fn small_int_search(n: &BigInt, parts: usize) -> Option<Vec<i64>> {
    let n = n.to_i64()?;
    if n > 50_000_000 {
        return None;
    }
    fn go(n: i64, parts: usize, out: &mut Vec<i64>) -> bool {
        if parts == 1 {
            let r = n.sqrt();
            if r * r == n {
                out.push(r);
                return true;
            }
            return false;
        }
        let mut x = n.sqrt();
        while x >= 0 {
            out.push(x);
            if go(n - x * x, parts - 1, out) {
                return true;
            }
            out.pop();
            x -= 1;
        }
        false
    }
    let mut out = Vec::new();
    go(n, parts, &mut out).then_some(out)
}

/// Rationals x_1..x_k with Σ x_i² = r (r > 0), for k = 1, 2 or 4.
pub fn sum_of_squares(r: &Rational, parts: usize) -> Option<Vec<Rational>> {
    if !r.is_positive() {
        return None;
    }
    if parts == 1 {
        return rational_sqrt(r).map(|s| vec![s]);
    }
    let (a, b) = (r.numer().clone(), r.denom().clone());
    let xs = small_int_search(&(&a * &b), parts)?;
    Some(
        xs.into_iter()
            .map(|x| Rational::new(BigInt::from(x), b.clone()))
            .collect(),
    )
}

/// Square root in Q(i), as a quaternion with c = d = 0.
fn gauss_sqrt(z: &Quat) -> Option<Quat> {
    let (x, y) = (&z.a, &z.b);
    let m = rational_sqrt(&(x * x + y * y))?;
    let two = q(2);
    if let Some(u) = rational_sqrt(&((x + &m) / &two)) {
        if !u.is_zero() {
            let v = y / (&two * &u);
            return Some(Quat::new(u, v, q(0), q(0)));
        }
    }
    let v = rational_sqrt(&((&m - x) / &two))?;
    if v.is_zero() {
        return None;
    }
    let u = y / (&two * &v);
    Some(Quat::new(u, v, q(0), q(0)))
}

/// c with c̄ v c = j for a pure imaginary quaternion v of square norm.
fn skew_unit_scalar(v: &Quat) -> Option<Quat> {
    if !v.a.is_zero() || v.is_zero() {
        return None;
    }
    let s = rational_sqrt(&v.norm_sq())?;
    let a = v.scale(&s.recip());
    let j = Quat::j();
    // a rotation q a q^{-1} = j with q = 1 - j a, or a detour through i when a = -j
    let (pre, a) = if a == -&j {
        (Quat::i(), j.clone())
    } else {
        (Quat::one(), a)
    };
    let qq = &Quat::one() - &(&j * &a);
    let m = &s * qq.norm_sq();
    // λ = x + y j commutes with j and has norm 1/m
    let xy = sum_of_squares(&m.recip(), 2)?;
    let lambda = Quat::new(xy[0].clone(), q(0), xy[1].clone(), q(0));
    let c = &(&pre * &qq.conj()) * &lambda;
    let check = &(&c.conj() * v) * &c;
    (check == j).then_some(c)
}

/// Scalar c normalizing the value v = φ(w, w) of a single vector, with the resulting unit.
fn normalize_value(spec: &FormSpec, v: &Quat) -> Option<(Quat, Unit)> {
    if v.is_zero() {
        return None;
    }
    match (spec.field, spec.sesqui, spec.kind) {
        (_, true, Kind::Sym) => {
            if !v.is_real() {
                return None;
            }
            let parts = match spec.field {
                Field::R => 1,
                Field::C => 2,
                Field::H => 4,
            };
            let xs = sum_of_squares(&v.a.abs().recip(), parts)?;
            let c = match spec.field {
                Field::R => Quat::real(xs[0].clone()),
                Field::C => Quat::new(xs[0].clone(), xs[1].clone(), q(0), q(0)),
                Field::H => Quat::new(xs[0].clone(), xs[1].clone(), xs[2].clone(), xs[3].clone()),
            };
            Some((
                c,
                if v.a.is_positive() {
                    Unit::Pos
                } else {
                    Unit::Neg
                },
            ))
        }
        (Field::C, false, Kind::Sym) => {
            let c = gauss_sqrt(&v.inv()?)?;
            Some((c, Unit::Pos))
        }
        (Field::H, true, Kind::SkewHerm) => skew_unit_scalar(v).map(|c| (c, Unit::J)),
        _ => None,
    }
}

fn constants(field: Field) -> Vec<Quat> {
    let mut c = vec![
        Quat::one(),
        Quat::real(qf(1, 2)),
        Quat::real(qf(-1, 2)),
        Quat::real(q(2)),
        Quat::real(q(-1)),
    ];
    if field != Field::R {
        c.extend([Quat::i(), Quat::i().scale(&qf(1, 2))]);
    }
    if field == Field::H {
        c.extend([
            Quat::j(),
            Quat::k(),
            Quat::j().scale(&qf(1, 2)),
            Quat::k().scale(&qf(1, 2)),
        ]);
    }
    c
}

/// T with T^• F T = unit_matrix(units). Units come out in the order they are split off.
pub fn normalize(spec: &FormSpec) -> Result<(QuatMat, Vec<Unit>), EmbError> {
    let n = spec.dim();
    let mut w: Vec<Vec<Quat>> = (0..n)
        .map(|i| {
            let mut v = vec![Quat::zero(); n];
            v[i] = Quat::one();
            v
        })
        .collect();
    let mut cols = Vec::new();
    let mut units = Vec::new();
    if spec.kind == Kind::Skew {
        while !w.is_empty() {
            let e = w.remove(0);
            let k = (0..w.len())
                .find(|&k| !spec.eval(&e, &w[k]).is_zero())
                .ok_or(EmbError::DegenerateForm)?;
            let b = spec.eval(&e, &w[k]);
            let f = scale_right(&w.remove(k), &b.inv().unwrap());
            for x in w.iter_mut() {
                let a = spec.eval(&f, x);
                let b = -&spec.eval(&e, x);
                *x = add_scaled(&add_scaled(x, &e, &a), &f, &b);
            }
            cols.push(e);
            cols.push(f);
            units.push(Unit::Pair);
        }
    } else {
        let consts = constants(spec.field);
        while !w.is_empty() {
            let mut pick = None;
            for i in 0..w.len() {
                if let Some(cu) = normalize_value(spec, &spec.eval(&w[i], &w[i])) {
                    pick = Some((i, w[i].clone(), cu));
                    break;
                }
            }
            if pick.is_none() {
                'outer: for i in 0..w.len() {
                    for j in 0..w.len() {
                        if i == j {
                            continue;
                        }
                        for c in &consts {
                            let v = add_scaled(&w[i], &w[j], c);
                            if let Some(cu) = normalize_value(spec, &spec.eval(&v, &v)) {
                                pick = Some((i, v, cu));
                                break 'outer;
                            }
                        }
                    }
                }
            }
            let Some((i, v, (c, unit))) = pick else {
                let degenerate = w
                    .iter()
                    .any(|x| w.iter().all(|y| spec.eval(x, y).is_zero()));
                return Err(if degenerate {
                    EmbError::DegenerateForm
                } else {
                    EmbError::FormIncompatible("no rational vector of unit length".into())
                });
            };
            w.remove(i);
            let e = scale_right(&v, &c);
            let u0 = spec.eval(&e, &e);
            let u0_inv = u0.inv().unwrap();
            for x in w.iter_mut() {
                let s = &u0_inv * &spec.eval(&e, x);
                *x = add_scaled(x, &e, &-&s);
            }
            cols.push(e);
            units.push(unit);
        }
    }
    let t = QuatMat::from_columns(&cols);
    debug_assert_eq!(spec.congruent(&t), unit_matrix(&units));
    Ok((t, units))
}

/// Inverse of a normalizing matrix: T^{-1} = C^{-1} T^• F.
pub fn normalizer_inverse(spec: &FormSpec, t: &QuatMat, units: &[Unit]) -> QuatMat {
    let c_inv = unit_matrix(units)
        .inverse()
        .expect("unit matrix is invertible");
    let td = if spec.sesqui {
        t.adjoint()
    } else {
        t.transpose()
    };
    c_inv.mul(&td).mul(&spec.matrix)
}
