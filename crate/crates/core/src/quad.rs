//! Quadrature building blocks: fixed Gauss-Legendre rules, panelized
//! integration with doubling refinement, and Chebyshev barycentric
//! interpolation used by the nested outage integrals.

use crate::error::{Result, SimError};

/// Standard Gauss-Legendre abscissas/weights on [-1, 1].
pub struct GlRule {
    pub nodes: &'static [f64],
    pub weights: &'static [f64],
}

pub const GL8: GlRule = GlRule {
    nodes: &[
        -0.9602898564975362,
        -0.7966664774136267,
        -0.525532409916329,
        -0.18343464249564978,
        0.18343464249564978,
        0.525532409916329,
        0.7966664774136267,
        0.9602898564975362,
    ],
    weights: &[
        0.10122853629037669,
        0.22238103445337434,
        0.31370664587788705,
        0.36268378337836177,
        0.36268378337836177,
        0.31370664587788705,
        0.22238103445337434,
        0.10122853629037669,
    ],
};

pub const GL16: GlRule = GlRule {
    nodes: &[
        -0.9894009349916499,
        -0.9445750230732326,
        -0.8656312023878318,
        -0.755404408355003,
        -0.6178762444026438,
        -0.45801677765722737,
        -0.2816035507792589,
        -0.09501250983763745,
        0.09501250983763745,
        0.2816035507792589,
        0.45801677765722737,
        0.6178762444026438,
        0.755404408355003,
        0.8656312023878318,
        0.9445750230732326,
        0.9894009349916499,
    ],
    weights: &[
        0.027152459411754037,
        0.062253523938647706,
        0.09515851168249259,
        0.12462897125553403,
        0.14959598881657676,
        0.16915651939500262,
        0.1826034150449236,
        0.18945061045506859,
        0.18945061045506859,
        0.1826034150449236,
        0.16915651939500262,
        0.14959598881657676,
        0.12462897125553403,
        0.09515851168249259,
        0.062253523938647706,
        0.027152459411754037,
    ],
};

pub const GL32: GlRule = GlRule {
    nodes: &[
        -0.9972638618494816,
        -0.9856115115452684,
        -0.9647622555875064,
        -0.9349060759377397,
        -0.8963211557660522,
        -0.84936761373257,
        -0.7944837959679424,
        -0.7321821187402897,
        -0.6630442669302152,
        -0.5877157572407623,
        -0.5068999089322294,
        -0.42135127613063533,
        -0.33186860228212767,
        -0.23928736225213706,
        -0.1444719615827965,
        -0.04830766568773831,
        0.04830766568773831,
        0.1444719615827965,
        0.23928736225213706,
        0.33186860228212767,
        0.42135127613063533,
        0.5068999089322294,
        0.5877157572407623,
        0.6630442669302152,
        0.7321821187402897,
        0.7944837959679424,
        0.84936761373257,
        0.8963211557660522,
        0.9349060759377397,
        0.9647622555875064,
        0.9856115115452684,
        0.9972638618494816,
    ],
    weights: &[
        0.007018610009469298,
        0.016274394730905965,
        0.025392065309262427,
        0.034273862913021626,
        0.042835898022226426,
        0.050998059262376244,
        0.058684093478535704,
        0.06582222277636175,
        0.07234579410884845,
        0.07819389578707031,
        0.08331192422694685,
        0.08765209300440391,
        0.09117387869576386,
        0.09384439908080457,
        0.09563872007927483,
        0.09654008851472781,
        0.09654008851472781,
        0.09563872007927483,
        0.09384439908080457,
        0.09117387869576386,
        0.08765209300440391,
        0.08331192422694685,
        0.07819389578707031,
        0.07234579410884845,
        0.06582222277636175,
        0.058684093478535704,
        0.050998059262376244,
        0.042835898022226426,
        0.034273862913021626,
        0.025392065309262427,
        0.016274394730905965,
        0.007018610009469298,
    ],
};

/// Integrate `f` over `[a, b]` split into `panels` equal panels of `rule`.
pub fn integrate_panels<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    panels: usize,
    rule: &GlRule,
) -> f64 {
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let lo = a + p as f64 * h;
        let c = lo + 0.5 * h;
        let s = 0.5 * h;
        let mut acc = 0.0;
        for (x, w) in rule.nodes.iter().zip(rule.weights) {
            acc += w * f(c + s * x);
        }
        total += s * acc;
    }
    total
}

/// Outcome of a doubling refinement.
pub struct Refined {
    pub value: f64,
    /// Relative change at the last doubling step.
    pub achieved: f64,
    pub evals: usize,
}

/// Integrate `f` over `[a, b]` by doubling the panel count (1, 2, 4, ...)
/// until the relative change drops below `rel_tol` or `max_panels` is hit.
///
/// Returns `SimError::Numerical` with the achieved tolerance if the budget
/// is exhausted first.
pub fn integrate_adaptive<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_panels: usize,
    rule: &GlRule,
) -> Result<Refined> {
    let mut panels = 1;
    let mut prev = integrate_panels(&mut f, a, b, panels, rule);
    let mut evals = rule.nodes.len();
    loop {
        panels *= 2;
        let next = integrate_panels(&mut f, a, b, panels, rule);
        evals += panels * rule.nodes.len();
        let achieved = (next - prev).abs() / next.abs().max(f64::MIN_POSITIVE);
        if achieved < rel_tol {
            return Ok(Refined {
                value: next,
                achieved,
                evals,
            });
        }
        if panels >= max_panels {
            return Err(SimError::Numerical {
                achieved,
                requested: rel_tol,
            });
        }
        prev = next;
    }
}

/// Like [`integrate_adaptive`] but never fails: exhausting the budget
/// returns the finest value together with its achieved tolerance.
pub fn integrate_adaptive_soft<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    max_panels: usize,
    rule: &GlRule,
) -> Refined {
    let mut panels = 1;
    let mut prev = integrate_panels(&mut f, a, b, panels, rule);
    let mut evals = rule.nodes.len();
    loop {
        panels *= 2;
        let next = integrate_panels(&mut f, a, b, panels, rule);
        evals += panels * rule.nodes.len();
        let achieved = (next - prev).abs() / next.abs().max(f64::MIN_POSITIVE);
        if achieved < rel_tol || panels >= max_panels {
            return Refined {
                value: next,
                achieved,
                evals,
            };
        }
        prev = next;
    }
}

/// Uniformly sampled function table with 4-point (cubic) Lagrange lookup.
///
/// The outage recursion tabulates its per-level tail probabilities on these
/// tables; lookups sit in the innermost quadrature loops, so evaluation is a
/// handful of multiplies. Interpolation error falls as `n^-4` for smooth
/// functions.
pub struct InterpTable {
    a: f64,
    inv_h: f64,
    values: Vec<f64>,
}

impl InterpTable {
    /// Sample `f` at `n >= 4` equispaced points covering `[a, b]`.
    pub fn build<F: FnMut(f64) -> f64>(n: usize, a: f64, b: f64, mut f: F) -> InterpTable {
        assert!(n >= 4 && b > a);
        let h = (b - a) / (n - 1) as f64;
        let values = (0..n).map(|i| f(a + i as f64 * h)).collect();
        InterpTable {
            a,
            inv_h: 1.0 / h,
            values,
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Cubic Lagrange interpolation; `x` outside the table is clamped.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.values.len();
        let u = (x - self.a) * self.inv_h;
        if u <= 0.0 {
            return self.values[0];
        }
        if u >= (n - 1) as f64 {
            return self.values[n - 1];
        }
        // centered 4-point stencil, shifted at the ends
        let j = (u as usize).clamp(1, n - 3);
        let t = u - j as f64; // in [-1, 2] but typically [0, 1]
        let (f0, f1, f2, f3) = (
            self.values[j - 1],
            self.values[j],
            self.values[j + 1],
            self.values[j + 2],
        );
        let a0 = -t * (t - 1.0) * (t - 2.0) / 6.0;
        let a1 = (t + 1.0) * (t - 1.0) * (t - 2.0) / 2.0;
        let a2 = -(t + 1.0) * t * (t - 2.0) / 2.0;
        let a3 = (t + 1.0) * t * (t - 1.0) / 6.0;
        a0 * f0 + a1 * f1 + a2 * f2 + a3 * f3
    }
}
