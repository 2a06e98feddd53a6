//! Circle-method numerics: Weyl sums, oscillatory integrals, the Ingham
//! kernel, moment counts, the smoothed counting identity and peak profiles.

pub mod identity;
pub mod kernel;
pub mod moments;
pub mod profile;
pub mod quadrature;
pub mod weyl;

pub use identity::{integral_decomposition, smoothed_count_identity, IdentityResult, IntegralDecomposition};
pub use kernel::{ingham_kernel, KernelSpec, PsiGrid};
pub use moments::{fourth_moment_count, fourth_moment_integral, r2_moment};
pub use profile::{peak_profile, PeakProfile};
pub use quadrature::{oscillatory_integral, oscillatory_integral_range};
pub use weyl::{gauss_sum, vdc_residual, weyl_bound_ratio, weyl_range, weyl_sum};

/// u(α) = log(α + e)².
pub fn u_default(alpha: f64) -> f64 {
    let l = (alpha + std::f64::consts::E).ln();
    l * l
}

/// Neumaier-compensated accumulator for complex sums.
#[derive(Clone, Copy, Default, Debug)]
pub(crate) struct KahanC {
    re: f64,
    im: f64,
    cre: f64,
    cim: f64,
}

impl KahanC {
    #[inline]
    fn step(s: &mut f64, c: &mut f64, x: f64) {
        let t = *s + x;
        if s.abs() >= x.abs() {
            *c += (*s - t) + x;
        } else {
            *c += (x - t) + *s;
        }
        *s = t;
    }

    #[inline]
    pub fn add(&mut self, re: f64, im: f64) {
        Self::step(&mut self.re, &mut self.cre, re);
        Self::step(&mut self.im, &mut self.cim, im);
    }

    pub fn value(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re + self.cre, self.im + self.cim)
    }
}
