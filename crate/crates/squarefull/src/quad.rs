//! Adaptive Simpson quadrature with an evaluation budget.

use crate::error::{Error, Result};

/// Integrate `f` over [a, b] to absolute tolerance `tol`.
///
/// Classic adaptive Simpson with the 1/15 error estimate. Fails with
/// [`Error::QuadratureBudget`] once `budget` function evaluations are spent.
pub fn adaptive_simpson<F>(f: F, a: f64, b: f64, tol: f64, budget: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    struct State<'a, F> {
        f: &'a F,
        evals: usize,
        budget: usize,
    }

    impl<F: Fn(f64) -> f64> State<'_, F> {
        fn eval(&mut self, x: f64) -> Result<f64> {
            if self.evals >= self.budget {
                return Err(Error::QuadratureBudget(format!(
                    "adaptive Simpson exceeded {} evaluations",
                    self.budget
                )));
            }
            self.evals += 1;
            Ok((self.f)(x))
        }

        fn recurse(
            &mut self,
            a: f64,
            b: f64,
            fa: f64,
            fm: f64,
            fb: f64,
            whole: f64,
            tol: f64,
            depth: u32,
        ) -> Result<f64> {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = self.eval(lm)?;
            let frm = self.eval(rm)?;
            let h = b - a;
            let left = h / 12.0 * (fa + 4.0 * flm + fm);
            let right = h / 12.0 * (fm + 4.0 * frm + fb);
            let refined = left + right;
            if depth == 0 {
                return Err(Error::QuadratureBudget(
                    "adaptive Simpson exceeded recursion depth".into(),
                ));
            }
            if (refined - whole).abs() <= 15.0 * tol {
                Ok(refined + (refined - whole) / 15.0)
            } else {
                let l = self.recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
                let r = self.recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
                Ok(l + r)
            }
        }
    }

    if a == b {
        return Ok(0.0);
    }
    let mut st = State { f: &f, evals: 0, budget };
    let m = 0.5 * (a + b);
    let fa = st.eval(a)?;
    let fm = st.eval(m)?;
    let fb = st.eval(b)?;
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    st.recurse(a, b, fa, fm, fb, whole, tol, 60)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let v = adaptive_simpson(|x| x * x * x, 0.0, 2.0, 1e-12, 1 << 20).unwrap();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_converges() {
        let v = adaptive_simpson(|x| (10.0 * x).sin(), 0.0, 1.0, 1e-10, 1 << 22).unwrap();
        let want = (1.0 - (10.0f64).cos()) / 10.0;
        assert!((v - want).abs() < 1e-9);
    }

    #[test]
    fn cube_root_singularity_in_derivative() {
        // y^(1/3) has unbounded derivative at 0; refinement must cope.
        let v = adaptive_simpson(|x| x.cbrt(), 0.0, 1.0, 1e-9, 1 << 22).unwrap();
        assert!((v - 0.75).abs() < 1e-8);
    }

    #[test]
    fn budget_error() {
        let r = adaptive_simpson(|x| (1e6 * x).sin().abs(), 0.0, 1.0, 1e-14, 100);
        assert!(matches!(r, Err(Error::QuadratureBudget(_))));
    }
}
