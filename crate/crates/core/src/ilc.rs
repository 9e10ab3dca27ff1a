//! Cyclic integrable logarithmic connections `E_{a,b}` of rank `n`.
//!
//! In the basis `e₁, …, eₙ` the connection acts by `δ₁ ↦ A₁` and
//! `δ₂ ↦ A₂`, where `A₂` is the companion matrix of `b` and `A₁` is lower
//! triangular in the iterated derivatives `δ₂^k(a)`. The module is cyclic,
//! generated by `e₁` with annihilator `(δ₁ + a, δ₂ⁿ + b_{n−1}δ₂^{n−1} + ⋯ + b₀)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::logcurve::{euler_solve, log_decompose, PlaneCurve};
use crate::ratpoly::Coeff;
use crate::weyl::{WeylContext, WeylOp};

pub type Matrix<C> = Vec<Vec<WeylOp<C>>>;

#[derive(Clone, Debug)]
pub struct IlcSpec<C: Coeff> {
    curve: PlaneCurve,
    ctx: Arc<WeylContext>,
    n: usize,
    a: WeylOp<C>,
    b: Vec<WeylOp<C>>,
    a1: Matrix<C>,
    a2: Matrix<C>,
    g1: WeylOp<C>,
    g2: WeylOp<C>,
}

impl<C: Coeff> PartialEq for IlcSpec<C> {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.n == o.n && self.a == o.a && self.b == o.b
    }
}

impl<C: Coeff> IlcSpec<C> {
    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn ctx(&self) -> &Arc<WeylContext> {
        &self.ctx
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn a(&self) -> &WeylOp<C> {
        &self.a
    }

    pub fn b(&self) -> &[WeylOp<C>] {
        &self.b
    }

    pub fn a1(&self) -> &Matrix<C> {
        &self.a1
    }

    pub fn a2(&self) -> &Matrix<C> {
        &self.a2
    }

    pub fn g1(&self) -> &WeylOp<C> {
        &self.g1
    }

    pub fn g2(&self) -> &WeylOp<C> {
        &self.g2
    }

    /// `δ₁, δ₂, h` in the spec's context.
    pub fn fields(&self) -> (WeylOp<C>, WeylOp<C>, WeylOp<C>) {
        let (h, d1, d2) = self.curve.embedded(&self.ctx).expect("context holds the plane");
        (d1, d2, h)
    }
}

fn check_plane(curve: &PlaneCurve, ctx: &WeylContext) -> Result<()> {
    let ok = ctx.base().len() == 2
        && ctx.base().iter().map(String::as_str).eq(curve.ctx().base().iter().map(String::as_str))
        && ctx.deriv().iter().map(String::as_str).eq(curve.ctx().deriv().iter().map(String::as_str));
    if ok {
        Ok(())
    } else {
        Err(Error::ContextMismatch("connection data must live over the plane x1, x2, d1, d2".into()))
    }
}

fn function_check<C: Coeff>(ctx: &Arc<WeylContext>, f: &WeylOp<C>, what: &str) -> Result<()> {
    if f.ctx() != ctx {
        return Err(Error::ContextMismatch(format!("{what} is in a different context")));
    }
    if !f.is_function() {
        return Err(Error::Structural(format!("{what} must not involve derivations")));
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

pub fn connection_matrices<C: Coeff>(
    curve: &PlaneCurve,
    a: &WeylOp<C>,
    b: &[WeylOp<C>],
) -> Result<(Matrix<C>, Matrix<C>)> {
    let ctx = a.ctx().clone();
    let (_, _, d2) = curve.embedded::<C>(&ctx)?;
    let n = b.len();
    let mut powers = vec![a.clone()];
    for k in 1..n {
        let next = d2.apply(&powers[k - 1])?;
        powers.push(next);
    }
    let zero = WeylOp::zero(&ctx);
    let mut a1 = vec![vec![zero.clone(); n]; n];
    let mut a2 = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        a1[i][i] = &a.neg() + &WeylOp::from_i64(&ctx, i as i64 * curve.c());
        for j in 0..i {
            a1[i][j] = powers[i - j].scale_i64(-binomial(i, j));
        }
        if i + 1 < n {
            a2[i][i + 1] = WeylOp::one(&ctx);
        }
        a2[n - 1][i] = b[i].neg();
    }
    Ok((a1, a2))
}

fn mat_mul<C: Coeff>(p: &Matrix<C>, q: &Matrix<C>) -> Matrix<C> {
    let n = p.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = WeylOp::zero(p[0][0].ctx());
                    for k in 0..n {
                        if !p[i][k].is_zero() && !q[k][j].is_zero() {
                            acc = &acc + &(&p[i][k] * &q[k][j]);
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// `δ₁(A₂) − δ₂(A₁) + [A₂, A₁] − c·A₂`.
pub fn integrability_residual<C: Coeff>(curve: &PlaneCurve, a1: &Matrix<C>, a2: &Matrix<C>) -> Result<Matrix<C>> {
    let ctx = a1[0][0].ctx().clone();
    let (_, d1, d2) = curve.embedded::<C>(&ctx)?;
    let n = a1.len();
    let p = mat_mul(a2, a1);
    let q = mat_mul(a1, a2);
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let r = &(&d1.apply(&a2[i][j])? - &d2.apply(&a1[i][j])?) + &(&p[i][j] - &q[i][j]);
            row.push(&r - &a2[i][j].scale_i64(curve.c()));
        }
        out.push(row);
    }
    Ok(out)
}

pub fn render_matrix<C: Coeff>(m: &Matrix<C>) -> String {
    let rows: Vec<String> =
        m.iter().map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))).collect();
    format!("[{}]", rows.join(", "))
}

/// `δ₂ⁿ + b_{n−1}δ₂^{n−1} + ⋯ + b₀` in normal order.
fn second_generator<C: Coeff>(d2: &WeylOp<C>, b: &[WeylOp<C>]) -> WeylOp<C> {
    let n = b.len();
    let mut g = d2.pow(n as u32);
    let mut p = WeylOp::one(d2.ctx());
    for bj in b {
        g = &g + &(bj * &p);
        p = &p * d2;
    }
    g
}

/// Builds `E_{a,b}` over `a`'s context, rejecting non-integrable data.
pub fn build_ilc<C: Coeff>(curve: &PlaneCurve, n: usize, a: &WeylOp<C>, b: &[WeylOp<C>]) -> Result<IlcSpec<C>> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank must be positive".into()));
    }
    if b.len() != n {
        return Err(Error::InvalidArgument(format!("rank {n} needs {n} coefficients b, got {}", b.len())));
    }
    let ctx = a.ctx().clone();
    check_plane(curve, &ctx)?;
    function_check(&ctx, a, "a")?;
    for (i, bi) in b.iter().enumerate() {
        function_check(&ctx, bi, &format!("b{i}"))?;
    }
    let (a1, a2) = connection_matrices(curve, a, b)?;
    let residual = integrability_residual(curve, &a1, &a2)?;
    if residual.iter().flatten().any(|r| !r.is_zero()) {
        return Err(Error::Integrability { residual: render_matrix(&residual) });
    }
    let (_, d1, d2) = curve.embedded::<C>(&ctx)?;
    let g1 = &d1 + a;
    let g2 = second_generator(&d2, b);
    Ok(IlcSpec { curve: curve.clone(), ctx, n, a: a.clone(), b: b.to_vec(), a1, a2, g1, g2 })
}

/// Solves the rank-2 integrability equations
/// `(δ₁ − c)(b₁) = 2δ₂(a)` and `(δ₁ − 2c)(b₀) = δ₂²(a) + b₁δ₂(a)`,
/// adding `e` times the kernel monomial of weight `2c` to `b₀`.
///
/// Returns `(b₁, b₀)`.
pub fn solve_integrability_rank2<C: Coeff>(
    curve: &PlaneCurve,
    a: &WeylOp<C>,
    e: &WeylOp<C>,
) -> Result<(WeylOp<C>, WeylOp<C>)> {
    let ctx = a.ctx().clone();
    check_plane(curve, &ctx)?;
    function_check(&ctx, a, "a")?;
    function_check(&ctx, e, "e")?;
    if !e.poly().supported_in(ctx.central_mask()) {
        return Err(Error::InvalidArgument("e must be a scalar".into()));
    }
    let c = curve.c();
    let (_, _, d2) = curve.embedded::<C>(&ctx)?;
    let d2a = d2.apply(a)?;
    let first = euler_solve(curve, c, &d2a.scale_i64(2))?;
    let b1 = first.particular;
    let rhs = &d2.apply(&d2a)? + &(&b1 * &d2a);
    let second = euler_solve(curve, 2 * c, &rhs)?;
    let b0 = match (second.kernel.as_slice(), e.is_zero()) {
        (_, true) => second.particular,
        ([m], false) => &second.particular + &(e * m),
        ([], false) => {
            return Err(Error::Unsolvable(format!("no kernel monomial of weight {} to carry e", 2 * c)));
        }
        (_, false) => {
            return Err(Error::Unsolvable(format!(
                "kernel of weight {} has dimension {}; e is ambiguous",
                2 * c,
                second.kernel.len()
            )));
        }
    };
    Ok((b1, b0))
}

/// `E_{a,b}(kD) ≅ E_{a+ω_h k, b}`.
pub fn twist_kd<C: Coeff>(spec: &IlcSpec<C>, k: i64) -> IlcSpec<C> {
    if k == 0 {
        return spec.clone();
    }
    let shift = WeylOp::from_i64(&spec.ctx, spec.curve.omega_h() as i64 * k);
    build_ilc(&spec.curve, spec.n, &(&spec.a + &shift), &spec.b).expect("twisting preserves integrability")
}

/// The dual connection `E_{c−a, (b₀−δ₂(b₁), −b₁)}` of a rank-2 spec.
pub fn dual_rank2<C: Coeff>(spec: &IlcSpec<C>) -> Result<IlcSpec<C>> {
    if spec.n != 2 {
        return Err(Error::UnsupportedRank(spec.n));
    }
    let (_, d2, _) = spec.fields();
    let a = &WeylOp::from_i64(&spec.ctx, spec.curve.c()) - &spec.a;
    let b1 = spec.b[1].neg();
    let b0 = &spec.b[0] - &d2.apply(&spec.b[1])?;
    build_ilc(&spec.curve, 2, &a, &[b0, b1])
}

pub fn presentation_ideal<C: Coeff>(spec: &IlcSpec<C>) -> (WeylOp<C>, WeylOp<C>) {
    (spec.g1.clone(), spec.g2.clone())
}

/// Division by `{g₁, g₂}` in the logarithmic ring, whose associated graded
/// ring is `O[δ₁, δ₂]` with `g₁ ↦ δ₁` and `g₂ ↦ δ₂ⁿ`. The remainder is
/// a combination of `δ₂^j` with `j < n`.
pub fn log_remainder<C: Coeff>(spec: &IlcSpec<C>, p: &WeylOp<C>) -> Result<WeylOp<C>> {
    let (d1, d2, _) = spec.fields();
    let n = spec.n as u32;
    let mut rest = p.clone();
    let mut rem = WeylOp::zero(&spec.ctx);
    while !rest.is_zero() {
        let parts = log_decompose(&spec.curve, &rest)?;
        let top = parts.iter().map(|((i, j), _)| i + j).max().unwrap_or(0);
        for ((i, j), a) in parts.into_iter().filter(|((i, j), _)| i + j == top) {
            let q = if i >= 1 {
                &(&(&a * &d1.pow(i - 1)) * &d2.pow(j)) * &spec.g1
            } else if j >= n {
                &(&a * &d2.pow(j - n)) * &spec.g2
            } else {
                let t = &a * &d2.pow(j);
                rem = &rem + &t;
                t
            };
            rest = &rest - &q;
        }
    }
    Ok(rem)
}

/// Remainder of the S-pair `δ₂ⁿ g₁ − δ₁ g₂` under [`log_remainder`].
pub fn spair_remainder<C: Coeff>(spec: &IlcSpec<C>) -> Result<WeylOp<C>> {
    let (d1, d2, _) = spec.fields();
    let s = &(&d2.pow(spec.n as u32) * &spec.g1) - &(&d1 * &spec.g2);
    log_remainder(spec, &s)
}

/// Parameters of the cusp family `F_{ν,(λ,m,n)}`: `a = λ + m x₁ + n x₂`
/// and `e = ν − ν²`. Each value is a scalar of the target context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspFamily<C: Coeff> {
    pub lambda: WeylOp<C>,
    pub m: WeylOp<C>,
    pub n: WeylOp<C>,
    pub nu: WeylOp<C>,
}

impl<C: Coeff> CuspFamily<C> {
    pub fn a(&self) -> WeylOp<C> {
        let ctx = self.lambda.ctx();
        &(&self.lambda + &(&self.m * &WeylOp::x(ctx, 0))) + &(&self.n * &WeylOp::x(ctx, 1))
    }

    pub fn e(&self) -> WeylOp<C> {
        &self.nu - &self.nu.pow(2)
    }

    /// The family member with `(λ, m, n) ↦ (1−λ, −m, −n)`.
    pub fn dual(&self) -> Self {
        let one = WeylOp::one(self.lambda.ctx());
        CuspFamily { lambda: &one - &self.lambda, m: self.m.neg(), n: self.n.neg(), nu: self.nu.clone() }
    }

    pub fn build(&self, curve: &PlaneCurve) -> Result<IlcSpec<C>> {
        let a = self.a();
        let (b1, b0) = solve_integrability_rank2(curve, &a, &self.e())?;
        build_ilc(curve, 2, &a, &[b0, b1])
    }
}

impl<C: Coeff> fmt::Display for IlcSpec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank: {}", self.n)?;
        writeln!(f, "a: {}", self.a)?;
        for (i, b) in self.b.iter().enumerate() {
            writeln!(f, "b{i}: {b}")?;
        }
        writeln!(f, "A1: {}", render_matrix(&self.a1))?;
        writeln!(f, "A2: {}", render_matrix(&self.a2))?;
        writeln!(f, "g1: {}", self.g1)?;
        write!(f, "g2: {}", self.g2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logcurve::build_curve;
    use crate::ratpoly::{CommPoly, Rational, VarContext};

    fn cusp() -> PlaneCurve {
        let ctx = VarContext::new(&["x1", "x2"], &[]).unwrap();
        let x1 = CommPoly::var(&ctx, "x1").unwrap();
        let x2 = CommPoly::var(&ctx, "x2").unwrap();
        build_curve(3, 2, &(&x1.pow(2) - &x2.pow(3))).unwrap()
    }

    fn symbolic() -> (PlaneCurve, Arc<WeylContext>, CuspFamily<Rational>) {
        let ctx = WeylContext::plane(&["lambda", "m", "n", "nu"], &[]);
        let v = |s: &str| WeylOp::var(&ctx, s).unwrap();
        let fam = CuspFamily { lambda: v("lambda"), m: v("m"), n: v("n"), nu: v("nu") };
        (cusp(), ctx.clone(), fam)
    }

    #[test]
    fn constant_rank2() {
        let curve = cusp();
        let ctx = WeylContext::plane(&["lambda"], &[]);
        let lam = WeylOp::<Rational>::var(&ctx, "lambda").unwrap();
        let zero = WeylOp::zero(&ctx);
        let spec = build_ilc(&curve, 2, &lam, &[zero.clone(), zero.clone()]).unwrap();
        assert_eq!(render_matrix(spec.a1()), "[[-lambda, 0], [0, -lambda + 1]]");
        assert_eq!(render_matrix(spec.a2()), "[[0, 1], [0, 0]]");
        let x1 = WeylOp::x(&ctx, 0);
        match build_ilc(&curve, 2, &lam, &[x1, zero]) {
            Err(Error::Integrability { residual }) => assert_eq!(residual, "[[0, 0], [-x1, 0]]"),
            other => panic!("expected integrability error, got {other:?}"),
        }
    }

    #[test]
    fn structure_sheaf() {
        let curve = cusp();
        let ctx = curve.ctx().clone();
        let zero = WeylOp::<Rational>::zero(&ctx);
        let spec = build_ilc(&curve, 1, &zero, std::slice::from_ref(&zero)).unwrap();
        let (g1, g2) = presentation_ideal(&spec);
        assert_eq!(&g1, curve.delta1());
        assert_eq!(&g2, curve.delta2());
    }

    #[test]
    fn closed_forms() {
        let (curve, _, fam) = symbolic();
        let spec = fam.build(&curve).unwrap();
        assert_eq!(spec.b()[1].to_string(), "2m*x2^2 + 2n*x1");
        let b0 = spec.b()[0].to_string();
        assert_eq!(b0, "m^2*x2^4 + 2m*n*x1*x2^2 + n^2*x1^2 - nu^2*x2 + 4m*x1*x2 + 3n*x2^2 + nu*x2");
        let (d1, _, _) = spec.fields();
        assert_eq!(spec.g1(), &(&d1 + &fam.a()));
        let c = spec.g1().commutator(spec.g2()).unwrap();
        assert_eq!(c, spec.g2().scale_i64(2));
    }

    #[test]
    fn dual_and_twist() {
        let (curve, ctx, fam) = symbolic();
        let spec = fam.build(&curve).unwrap();
        let dual = dual_rank2(&spec).unwrap();
        assert_eq!(dual, fam.dual().build(&curve).unwrap());
        assert_eq!(dual_rank2(&dual).unwrap(), spec);
        let t = twist_kd(&twist_kd(&spec, -1), 3);
        assert_eq!(t, twist_kd(&spec, 2));
        assert_eq!(t.a(), &(&fam.a() + &WeylOp::from_i64(&ctx, 12)));
        assert_eq!(twist_kd(&spec, 0), spec);
        let zero = WeylOp::<Rational>::zero(&ctx);
        let o = build_ilc(&curve, 1, &zero, std::slice::from_ref(&zero)).unwrap();
        assert!(matches!(dual_rank2(&o), Err(Error::UnsupportedRank(1))));
        let z2 = build_ilc(&curve, 2, &zero, &[zero.clone(), zero.clone()]).unwrap();
        let d = dual_rank2(&z2).unwrap();
        assert_eq!(d.a(), &WeylOp::one(&ctx));
        assert!(d.b().iter().all(WeylOp::is_zero));
    }

    #[test]
    fn buchberger_pair() {
        let (curve, _, fam) = symbolic();
        let spec = fam.build(&curve).unwrap();
        let r = spair_remainder(&spec).unwrap();
        assert!(r.is_zero(), "remainder {r}");
    }

    #[test]
    fn solver_errors() {
        let ctx = WeylContext::plane(&[], &[]);
        let curve = cusp();
        let x1 = WeylOp::<Rational>::x(&ctx, 0);
        let x2 = WeylOp::<Rational>::x(&ctx, 1);
        let (b1, b0) =
            solve_integrability_rank2(&curve, &WeylOp::<Rational>::from_i64(&ctx, 5), &WeylOp::zero(&ctx)).unwrap();
        assert!(b1.is_zero() && b0.is_zero());
        assert!(solve_integrability_rank2(&curve, &x1, &x2).is_err());
        let d1 = WeylOp::<Rational>::d(&ctx, 0);
        assert!(build_ilc(&curve, 1, &d1, &[WeylOp::zero(&ctx)]).is_err());
    }
}
