//! The check registry: every inequality as an executable predicate.
//!
//! Evaluators return one [`Side`] per inequality in a chain; the harness
//! reports the side closest to violation. Löwner comparisons report
//! `λ_min(Y − X)` as their margin, scalar inequalities `rhs − lhs`, and
//! equalities `−|lhs − rhs|`.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::linalg::{hermitian_function, inverse, loewner_margin, real_part, spectral_norm};
use crate::matfun::{apply_monotone, fractional_power, MonotoneRep};
use crate::matrix::CMatrix;
use crate::means::{
    geometric_mean, heinz_mean, logarithmic_mean, scalar_geometric_mean, scalar_heinz_mean,
    scalar_logarithmic_mean, sigma_mean,
};
use crate::numrange::{numerical_radius as w, sectorial_index};

/// What the generator must produce for each matrix input of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InputKind {
    /// Certified to lie in the sector of the cell's α.
    Sectorial,
    /// Positive definite; the cell's α is irrelevant.
    Positive,
    /// Unstructured Gaussian matrices; the cell's α is irrelevant.
    General,
    /// Positive definite `A, B` followed by `C = A + P`, `D = B + Q` with
    /// random positive semidefinite `P, Q`.
    PositiveOrdered,
}

/// Range of the exponent `t`, when the check has one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamRange {
    None,
    /// `t ∈ (0, 1)`.
    Unit,
    /// `t ∈ (−1, 1)`, `t ≠ 0`.
    Signed,
    /// `t ∈ [−1, 0)`.
    NegativeUnit,
}

/// How a side compares its two quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relation {
    /// `lhs ≤ rhs`.
    Scalar,
    /// `X ≤ Y` in the Löwner order; lhs/rhs hold `‖X‖`, `‖Y‖`.
    Loewner,
    /// `lhs = rhs`.
    Equality,
}

/// One inequality of a chain.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Side {
    pub name: String,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
}

impl Side {
    fn leq(name: &str, lhs: f64, rhs: f64) -> Self {
        Self { name: name.into(), relation: Relation::Scalar, lhs, rhs, margin: rhs - lhs }
    }

    fn eq(name: &str, lhs: f64, rhs: f64) -> Self {
        Self { name: name.into(), relation: Relation::Equality, lhs, rhs, margin: -(lhs - rhs).abs() }
    }

    fn loewner(name: &str, x: &CMatrix, y: &CMatrix) -> Result<Self> {
        Ok(Self {
            name: name.into(),
            relation: Relation::Loewner,
            lhs: spectral_norm(x),
            rhs: spectral_norm(y),
            margin: loewner_margin(x, y)?,
        })
    }
}

/// Everything an evaluator may read.
pub struct Ctx<'a> {
    pub inputs: &'a [CMatrix],
    pub alpha: f64,
    pub t: f64,
    pub lambda: f64,
    pub f: Option<&'a MonotoneRep>,
}

impl Ctx<'_> {
    fn a(&self) -> &CMatrix {
        &self.inputs[0]
    }

    fn b(&self) -> &CMatrix {
        &self.inputs[1]
    }

    fn f(&self) -> &MonotoneRep {
        self.f.expect("check declares needs_f")
    }
}

pub type Evaluator = fn(&Ctx) -> Result<Vec<Side>>;

/// One registered inequality.
#[derive(Clone)]
pub struct CheckDefinition {
    pub id: &'static str,
    /// The inequality in plain notation.
    pub statement: &'static str,
    pub arity: usize,
    pub input: InputKind,
    pub needs_f: bool,
    pub t_range: ParamRange,
    pub needs_lambda: bool,
    pub evaluate: Evaluator,
}

impl CheckDefinition {
    pub fn needs_t(&self) -> bool {
        self.t_range != ParamRange::None
    }
}

impl std::fmt::Debug for CheckDefinition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CheckDefinition")
            .field("id", &self.id)
            .field("statement", &self.statement)
            .field("arity", &self.arity)
            .field("input", &self.input)
            .field("needs_f", &self.needs_f)
            .field("t_range", &self.t_range)
            .field("needs_lambda", &self.needs_lambda)
            .finish()
    }
}

fn sec(x: f64) -> f64 {
    1.0 / x.cos()
}

/// `X^{1/2} f(X^{−1/2} Y X^{−1/2}) X^{1/2}` for positive `X, Y`.
fn hermitian_mean(f: &MonotoneRep, x: &CMatrix, y: &CMatrix) -> Result<CMatrix> {
    let root = hermitian_function(x, f64::sqrt)?;
    let inv_root = hermitian_function(x, |v| 1.0 / v.sqrt())?;
    let inner = (&(&inv_root * y) * &inv_root).hermitian_part();
    Ok((&(&root * &hermitian_function(&inner, |v| f.scalar_eval(v))?) * &root).hermitian_part())
}

fn e1(c: &Ctx) -> Result<Vec<Side>> {
    let (wa, na) = (w(c.a()), spectral_norm(c.a()));
    Ok(vec![Side::leq("half norm <= w", 0.5 * na, wa), Side::leq("w <= norm", wa, na)])
}

fn t1(c: &Ctx) -> Result<Vec<Side>> {
    let (wa, na) = (w(c.a()), spectral_norm(c.a()));
    Ok(vec![Side::leq("cos a norm <= w", c.alpha.cos() * na, wa), Side::leq("w <= norm", wa, na)])
}

fn t2(c: &Ctx) -> Result<Vec<Side>> {
    let p = fractional_power(c.a(), c.t)?;
    let (wp, np) = (w(&p), spectral_norm(&p));
    Ok(vec![
        Side::leq("cos ta norm(A^t) <= w(A^t)", (c.t * c.alpha).cos() * np, wp),
        Side::leq("w(A^t) <= norm(A^t)", wp, np),
    ])
}

fn t3(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("w <= sec a w(Re A)", w(c.a()), sec(c.alpha) * w(&real_part(c.a())))])
}

fn t4(c: &Ctx) -> Result<Vec<Side>> {
    let (t, al) = (c.t, c.alpha);
    let wt = w(c.a()).powf(t);
    let wp = w(&fractional_power(c.a(), t)?);
    Ok(vec![
        Side::leq("lower", (t * al).cos() * al.cos().powf(t) * wt, wp),
        Side::leq("upper", wp, sec(t * al) * sec(al).powf(2.0 * t) * wt),
    ])
}

fn t5(c: &Ctx) -> Result<Vec<Side>> {
    let (t, al) = (c.t, c.alpha);
    let lhs = (t * al).cos() * al.cos().powf(2.0 * t) * w(c.a()).powf(-t);
    Ok(vec![Side::leq("lower", lhs, w(&fractional_power(c.a(), -t)?))])
}

fn t6(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = c.alpha.cos().powi(3) / w(c.a());
    Ok(vec![Side::leq("lower", lhs, w(&inverse(c.a())?))])
}

fn t7(c: &Ctx) -> Result<Vec<Side>> {
    let rhs = sec(c.alpha).powi(2) * w(c.a()) * w(c.b());
    Ok(vec![Side::leq("upper", w(&(c.a() * c.b())), rhs)])
}

fn t8(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("index", sectorial_index(&sigma_mean(c.f(), c.a(), c.b())?)?, c.alpha)])
}

fn t8a(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("index", sectorial_index(&apply_monotone(c.f(), c.a())?)?, c.alpha)])
}

fn t9(c: &Ctx) -> Result<Vec<Side>> {
    let fw = c.f().scalar_eval(w(c.a()));
    let wf = w(&apply_monotone(c.f(), c.a())?);
    Ok(vec![
        Side::leq("lower", c.alpha.cos() * fw, wf),
        Side::leq("upper", wf, sec(c.alpha).powi(3) * fw),
    ])
}

fn t10(c: &Ctx) -> Result<Vec<Side>> {
    let l = c.lambda;
    let combo = apply_monotone(c.f(), c.a())?.lin_comb(1.0 - l, &apply_monotone(c.f(), c.b())?, l);
    let rhs = sec(c.alpha).powi(3) * c.f().scalar_eval((1.0 - l) * w(c.a()) + l * w(c.b()));
    Ok(vec![Side::leq("upper", w(&combo), rhs)])
}

fn power_sum(c: &Ctx) -> Result<CMatrix> {
    Ok(&fractional_power(c.a(), c.t)? + &fractional_power(c.b(), c.t)?)
}

fn t10a_rhs(c: &Ctx) -> f64 {
    2f64.powf(1.0 - c.t) * sec(c.alpha).powi(3) * (w(c.a()) + w(c.b())).powf(c.t)
}

fn t10a(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("upper", w(&power_sum(c)?), t10a_rhs(c))])
}

fn t11(c: &Ctx) -> Result<Vec<Side>> {
    let f = c.f();
    let lhs = w(&apply_monotone(f, &(c.a() + c.b()))?);
    let rhs = sec(c.alpha).powi(3) * (w(&apply_monotone(f, c.a())?) + w(&apply_monotone(f, c.b())?));
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn t11a(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = w(&fractional_power(&(c.a() + c.b()), c.t)?);
    Ok(vec![Side::leq("upper", lhs, sec(c.alpha).powi(3) * w(&power_sum(c)?))])
}

fn t11b(c: &Ctx) -> Result<Vec<Side>> {
    let whole = w(&fractional_power(&(c.a() + c.b()), c.t)?);
    let sum = w(&power_sum(c)?);
    Ok(vec![
        Side::leq("lower", c.alpha.cos().powi(3) * whole, sum),
        Side::leq("upper", sum, t10a_rhs(c)),
    ])
}

fn t12(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = c.alpha.cos().powi(2) * w(c.a()).max(w(c.b()));
    Ok(vec![Side::leq("lower", lhs, w(&(c.a() + c.b())))])
}

fn t13(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = w(&sigma_mean(c.f(), c.a(), c.b())?);
    let rhs = sec(c.alpha).powi(3) * c.f().scalar_mean(w(c.a()), w(c.b()));
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn t13a(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = w(&geometric_mean(c.a(), c.b(), c.t)?);
    let rhs = sec(c.alpha).powi(3) * scalar_geometric_mean(w(c.a()), w(c.b()), c.t);
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn t14(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = w(&logarithmic_mean(c.a(), c.b())?);
    let rhs = sec(c.alpha).powi(3) * scalar_logarithmic_mean(w(c.a()), w(c.b()));
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn t15(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = w(&heinz_mean(c.a(), c.b(), c.t)?);
    let rhs = sec(c.alpha).powi(3) * scalar_heinz_mean(w(c.a()), w(c.b()), c.t);
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn t16(c: &Ctx) -> Result<Vec<Side>> {
    let wh = w(&heinz_mean(c.a(), c.b(), c.t)?);
    let wg = w(&geometric_mean(c.a(), c.b(), 0.5)?);
    let ws = w(&(c.a() + c.b()));
    Ok(vec![
        Side::leq("lower", c.alpha.cos().powi(4) * wg, wh),
        Side::leq("upper", wh, 0.5 * sec(c.alpha).powi(4) * ws),
    ])
}

fn t17(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = c.alpha.cos() * w(&(c.a() * c.b())).sqrt();
    Ok(vec![Side::leq("lower", lhs, scalar_heinz_mean(w(c.a()), w(c.b()), c.t))])
}

fn l1(c: &Ctx) -> Result<Vec<Side>> {
    let x = real_part(&sigma_mean(c.f(), c.a(), c.b())?);
    let y = hermitian_mean(c.f(), &real_part(c.a()), &real_part(c.b()))?.scale_real(sec(c.alpha).powi(2));
    Ok(vec![Side::loewner("upper", &x, &y)?])
}

fn l2(c: &Ctx) -> Result<Vec<Side>> {
    let f = c.f();
    let lhs = spectral_norm(&apply_monotone(f, &(c.a() + c.b()))?);
    let rhs = spectral_norm(&(&apply_monotone(f, c.a())? + &apply_monotone(f, c.b())?));
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn l3(c: &Ctx) -> Result<Vec<Side>> {
    let lhs = spectral_norm(&sigma_mean(c.f(), c.a(), c.b())?);
    let rhs = c.f().scalar_mean(spectral_norm(c.a()), spectral_norm(c.b()));
    Ok(vec![Side::leq("upper", lhs, rhs)])
}

fn l4(c: &Ctx) -> Result<Vec<Side>> {
    let f = c.f();
    let lower = hermitian_function(&real_part(c.a()), |v| f.scalar_eval(v))?;
    let middle = real_part(&apply_monotone(f, c.a())?);
    let upper = lower.scale_real(sec(c.alpha).powi(2));
    Ok(vec![Side::loewner("lower", &lower, &middle)?, Side::loewner("upper", &middle, &upper)?])
}

fn l5(c: &Ctx) -> Result<Vec<Side>> {
    let f = c.f();
    let fr = f.scalar_eval(spectral_norm(&real_part(c.a())));
    let middle = spectral_norm(&real_part(&apply_monotone(f, c.a())?));
    Ok(vec![Side::leq("lower", fr, middle), Side::leq("upper", middle, sec(c.alpha).powi(2) * fr)])
}

/// `(Re(A^t), (Re A)^t)`.
fn real_power_pair(c: &Ctx) -> Result<(CMatrix, CMatrix)> {
    let t = c.t;
    let re_of_power = real_part(&fractional_power(c.a(), t)?);
    let power_of_re = hermitian_function(&real_part(c.a()), |v| v.powf(t))?;
    Ok((re_of_power, power_of_re))
}

fn l6(c: &Ctx) -> Result<Vec<Side>> {
    let (rp, pr) = real_power_pair(c)?;
    let upper = rp.scale_real(c.alpha.cos().powf(2.0 * c.t));
    Ok(vec![Side::loewner("lower", &rp, &pr)?, Side::loewner("upper", &pr, &upper)?])
}

fn l7(c: &Ctx) -> Result<Vec<Side>> {
    let (rp, pr) = real_power_pair(c)?;
    let lower = rp.scale_real(c.alpha.cos().powf(2.0 * c.t));
    Ok(vec![Side::loewner("lower", &lower, &pr)?, Side::loewner("upper", &pr, &rp)?])
}

fn l8(c: &Ctx) -> Result<Vec<Side>> {
    let (na, nr) = (spectral_norm(c.a()), spectral_norm(&real_part(c.a())));
    Ok(vec![Side::leq("lower", c.alpha.cos() * na, nr), Side::leq("upper", nr, na)])
}

fn l9(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("upper", w(&real_part(c.a())), w(c.a()))])
}

fn l10(c: &Ctx) -> Result<Vec<Side>> {
    let nh = spectral_norm(&heinz_mean(c.a(), c.b(), c.t)?);
    let ng = spectral_norm(&geometric_mean(c.a(), c.b(), 0.5)?);
    let ns = spectral_norm(&(c.a() + c.b()));
    Ok(vec![
        Side::leq("lower", c.alpha.cos().powi(3) * ng, nh),
        Side::leq("upper", nh, 0.5 * sec(c.alpha).powi(3) * ns),
    ])
}

fn l11(c: &Ctx) -> Result<Vec<Side>> {
    let bound = c.t * c.alpha;
    Ok(vec![
        Side::leq("positive power", sectorial_index(&fractional_power(c.a(), c.t)?)?, bound),
        Side::leq("negative power", sectorial_index(&fractional_power(c.a(), -c.t)?)?, bound),
    ])
}

fn l12(c: &Ctx) -> Result<Vec<Side>> {
    let block = CMatrix::block_antidiagonal(c.a(), c.b())?;
    Ok(vec![Side::eq("equality", w(&block), 0.5 * spectral_norm(&(c.a() + c.b())))])
}

fn l13(c: &Ctx) -> Result<Vec<Side>> {
    let block = CMatrix::block_antidiagonal(c.a(), c.b())?;
    let rhs = spectral_norm(c.a()).max(spectral_norm(c.b()));
    Ok(vec![Side::eq("equality", spectral_norm(&block), rhs)])
}

fn l14(c: &Ctx) -> Result<Vec<Side>> {
    Ok(vec![Side::leq("lower", 1.0 / spectral_norm(c.a()), spectral_norm(&inverse(c.a())?))])
}

/// Inputs are `A, B, C, D` with `C − A` and `D − B` positive semidefinite.
fn l15(c: &Ctx) -> Result<Vec<Side>> {
    let f = c.f();
    let lo = sigma_mean(f, &c.inputs[0], &c.inputs[1])?.hermitian_part();
    let hi = sigma_mean(f, &c.inputs[2], &c.inputs[3])?.hermitian_part();
    Ok(vec![Side::loewner("upper", &lo, &hi)?])
}

struct Spec {
    id: &'static str,
    statement: &'static str,
    arity: usize,
    input: InputKind,
    needs_f: bool,
    t_range: ParamRange,
    needs_lambda: bool,
    evaluate: Evaluator,
}

const fn spec(
    id: &'static str,
    statement: &'static str,
    arity: usize,
    input: InputKind,
    needs_f: bool,
    t_range: ParamRange,
    evaluate: Evaluator,
) -> Spec {
    Spec { id, statement, arity, input, needs_f, t_range, needs_lambda: false, evaluate }
}

use InputKind::{General, Positive, PositiveOrdered, Sectorial};
use ParamRange::{NegativeUnit, None as NoT, Signed, Unit};

const REGISTRY: &[Spec] = &[
    spec("E1", "‖A‖/2 ≤ w(A) ≤ ‖A‖", 1, General, false, NoT, e1),
    spec("T1", "cos α ‖A‖ ≤ w(A) ≤ ‖A‖", 1, Sectorial, false, NoT, t1),
    spec("T2", "cos tα ‖A^t‖ ≤ w(A^t) ≤ ‖A^t‖, t ∈ (−1, 1)", 1, Sectorial, false, Signed, t2),
    spec("T3", "w(A) ≤ sec α w(Re A)", 1, Sectorial, false, NoT, t3),
    spec("T4", "cos tα cos^t α w^t(A) ≤ w(A^t) ≤ sec tα sec^{2t} α w^t(A)", 1, Sectorial, false, Unit, t4),
    spec("T5", "cos tα cos^{2t} α w^{−t}(A) ≤ w(A^{−t})", 1, Sectorial, false, Unit, t5),
    spec("T6", "cos³ α w^{−1}(A) ≤ w(A^{−1})", 1, Sectorial, false, NoT, t6),
    spec("T7", "w(AB) ≤ sec² α w(A) w(B)", 2, Sectorial, false, NoT, t7),
    spec("T8", "index(A σ_f B) ≤ α", 2, Sectorial, true, NoT, t8),
    spec("T8a", "index(f(A)) ≤ α", 1, Sectorial, true, NoT, t8a),
    spec("T9", "cos α f(w(A)) ≤ w(f(A)) ≤ sec³ α f(w(A))", 1, Sectorial, true, NoT, t9),
    Spec {
        needs_lambda: true,
        ..spec(
            "T10",
            "w((1−λ) f(A) + λ f(B)) ≤ sec³ α f((1−λ) w(A) + λ w(B))",
            2,
            Sectorial,
            true,
            NoT,
            t10,
        )
    },
    spec("T10a", "w(A^t + B^t) ≤ 2^{1−t} sec³ α (w(A) + w(B))^t", 2, Sectorial, false, Unit, t10a),
    spec("T11", "w(f(A + B)) ≤ sec³ α (w(f(A)) + w(f(B)))", 2, Sectorial, true, NoT, t11),
    spec("T11a", "w((A + B)^t) ≤ sec³ α w(A^t + B^t)", 2, Sectorial, false, Unit, t11a),
    spec(
        "T11b",
        "cos³ α w((A + B)^t) ≤ w(A^t + B^t) ≤ 2^{1−t} sec³ α (w(A) + w(B))^t",
        2,
        Sectorial,
        false,
        Unit,
        t11b,
    ),
    spec("T12", "cos² α max(w(A), w(B)) ≤ w(A + B)", 2, Sectorial, false, NoT, t12),
    spec("T13", "w(A σ_f B) ≤ sec³ α (w(A) σ_f w(B))", 2, Sectorial, true, NoT, t13),
    spec("T13a", "w(A #_t B) ≤ sec³ α w^{1−t}(A) w^t(B)", 2, Sectorial, false, Unit, t13a),
    spec("T14", "w(L(A, B)) ≤ sec³ α L(w(A), w(B))", 2, Sectorial, false, NoT, t14),
    spec("T15", "w(H_t(A, B)) ≤ sec³ α H_t(w(A), w(B))", 2, Sectorial, false, Unit, t15),
    spec("T16", "cos⁴ α w(A # B) ≤ w(H_t(A, B)) ≤ (sec⁴ α / 2) w(A + B)", 2, Sectorial, false, Unit, t16),
    spec("T17", "cos α w^{1/2}(AB) ≤ H_t(w(A), w(B))", 2, Sectorial, false, Unit, t17),
    spec("L1", "Re(A σ_f B) ≤ sec² α (Re A) σ_f (Re B)", 2, Sectorial, true, NoT, l1),
    spec("L2", "‖f(A + B)‖ ≤ ‖f(A) + f(B)‖, A, B > 0", 2, Positive, true, NoT, l2),
    spec("L3", "‖A σ_f B‖ ≤ ‖A‖ σ_f ‖B‖, A, B > 0", 2, Positive, true, NoT, l3),
    spec("L4", "f(Re A) ≤ Re f(A) ≤ sec² α f(Re A)", 1, Sectorial, true, NoT, l4),
    spec("L5", "f(‖Re A‖) ≤ ‖Re f(A)‖ ≤ sec² α f(‖Re A‖)", 1, Sectorial, true, NoT, l5),
    spec("L6", "Re A^t ≤ (Re A)^t ≤ cos^{2t} α Re A^t, t ∈ [−1, 0)", 1, Sectorial, false, NegativeUnit, l6),
    spec("L7", "cos^{2t} α Re A^t ≤ (Re A)^t ≤ Re A^t, t ∈ (0, 1)", 1, Sectorial, false, Unit, l7),
    spec("L8", "cos α ‖A‖ ≤ ‖Re A‖ ≤ ‖A‖", 1, Sectorial, false, NoT, l8),
    spec("L9", "w(Re A) ≤ w(A)", 1, General, false, NoT, l9),
    spec("L10", "cos³ α ‖A # B‖ ≤ ‖H_t(A, B)‖ ≤ (sec³ α / 2) ‖A + B‖", 2, Sectorial, false, Unit, l10),
    spec("L11", "index(A^t) ≤ tα and index(A^{−t}) ≤ tα", 1, Sectorial, false, Unit, l11),
    spec("L12", "w([[0, A], [B, 0]]) = ‖A + B‖/2, A, B > 0", 2, Positive, false, NoT, l12),
    spec("L13", "‖[[0, A], [B, 0]]‖ = max(‖A‖, ‖B‖)", 2, General, false, NoT, l13),
    spec("L14", "‖A‖^{−1} ≤ ‖A^{−1}‖", 1, General, false, NoT, l14),
    spec("L15", "A ≤ C, B ≤ D ⟹ A σ_f B ≤ C σ_f D, all positive", 4, PositiveOrdered, true, NoT, l15),
];

/// All checks, in a fixed order with stable ids.
pub fn registry() -> Vec<CheckDefinition> {
    REGISTRY
        .iter()
        .map(|s| CheckDefinition {
            id: s.id,
            statement: s.statement,
            arity: s.arity,
            input: s.input,
            needs_f: s.needs_f,
            t_range: s.t_range,
            needs_lambda: s.needs_lambda,
            evaluate: s.evaluate,
        })
        .collect()
}

/// Looks a check up by id.
pub fn find_check(id: &str) -> Option<CheckDefinition> {
    registry().into_iter().find(|c| c.id == id)
}
