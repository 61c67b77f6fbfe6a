//! Pole moves on anti-Hessenberg pencils.
//!
//! Poles are indexed 1-based (`σ_1 … σ_{n-1}`) like in
//! [`StructuredPencil::pole_at`]; cores carry a 0-based row/column index.
//! Every move is a unitary congruence `(A, B) ↦ (Q^*AQ, Q^*BQ)`.

mod cross;
mod middle;
mod rotation;

pub use cross::{check_separated, cross_solve_2x2, solve_2x2, COINCIDENCE_THRESHOLD};
pub use rotation::{apply_congruence, rotation_from_vector, CoreTransformation};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pencil::{HomogeneousValue, StructuredPencil};
use rotation::{annihilator, apply_core};

/// Active diagonal block `offset..offset+len` of the pencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Window {
    pub offset: usize,
    pub len: usize,
}

impl Window {
    pub fn full(n: usize) -> Self {
        Window { offset: 0, len: n }
    }

    /// Global position of window pole `k`.
    pub fn pole_position(&self, k: usize) -> (usize, usize) {
        (self.offset + self.len - k - 1, self.offset + k - 1)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct MoveStats {
    pub type_i: usize,
    pub type_ii: usize,
    pub type_iio: usize,
    pub type_iie: usize,
    pub refinements_iio: usize,
    pub refinements_iie: usize,
}

impl MoveStats {
    pub fn total_moves(&self) -> usize {
        self.type_i + self.type_ii + self.type_iio + self.type_iie
    }

    pub fn total_refinements(&self) -> usize {
        self.refinements_iio + self.refinements_iie
    }

    pub fn merge(&mut self, o: &MoveStats) {
        self.type_i += o.type_i;
        self.type_ii += o.type_ii;
        self.type_iio += o.type_iio;
        self.type_iie += o.type_iie;
        self.refinements_iio += o.refinements_iio;
        self.refinements_iie += o.refinements_iie;
    }
}

/// Refinement budget and acceptance level of the middle swap.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapControl {
    pub max_refines: usize,
    /// Residual accepted when `≤ tol_factor · ε · ‖M‖_F` per matrix.
    pub tol_factor: f64,
}

impl Default for SwapControl {
    fn default() -> Self {
        SwapControl {
            max_refines: 10,
            tol_factor: 10.0,
        }
    }
}

/// Entries of the middle block that a perfect swap leaves at zero.
///
/// One entry for odd windows, three (`(0,0)`, `(0,1)`, `(1,0)`) for even.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwapResidual {
    pub a: [Complex64; 3],
    pub b: [Complex64; 3],
    pub len: usize,
    pub norm_a: f64,
    pub norm_b: f64,
}

impl SwapResidual {
    pub fn relative_a(&self) -> f64 {
        rel(&self.a[..self.len], self.norm_a)
    }

    pub fn relative_b(&self) -> f64 {
        rel(&self.b[..self.len], self.norm_b)
    }

    pub fn relative(&self) -> f64 {
        self.relative_a().max(self.relative_b())
    }

    pub fn within(&self, tol_factor: f64) -> bool {
        self.relative() <= tol_factor * f64::EPSILON
    }
}

fn rel(v: &[Complex64], norm: f64) -> f64 {
    let m = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if m == 0.0 {
        0.0
    } else {
        m / norm
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SwapOutcome {
    pub cores: Vec<CoreTransformation>,
    pub refinements: usize,
    /// Residual right after the direct swap.
    pub initial: SwapResidual,
    /// Residual after the last refinement, before it was set to zero.
    pub residual: SwapResidual,
    pub converged: bool,
    pub odd: bool,
}

impl SwapOutcome {
    pub fn stats(&self) -> MoveStats {
        let mut s = MoveStats::default();
        if self.odd {
            s.type_iio = 1;
            s.refinements_iio = self.refinements;
        } else {
            s.type_iie = 1;
            s.refinements_iie = self.refinements;
        }
        s
    }
}

pub(crate) fn max_abs(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Inverse of a positive scale, 1 for zero blocks.
pub(crate) fn inv_scale(m: f64) -> f64 {
    if m > 0.0 && m.is_finite() {
        1.0 / m
    } else {
        1.0
    }
}

/// A pencil window with an optional accumulated transformation.
pub struct MoveSite<'a> {
    pencil: &'a mut StructuredPencil,
    window: Window,
    q: Option<&'a mut CMatrix>,
}

impl<'a> MoveSite<'a> {
    pub fn new(
        pencil: &'a mut StructuredPencil,
        window: Window,
        q: Option<&'a mut CMatrix>,
    ) -> Self {
        debug_assert!(window.offset + window.len <= pencil.n());
        MoveSite { pencil, window, q }
    }

    pub fn pencil(&self) -> &StructuredPencil {
        self.pencil
    }

    pub fn window(&self) -> Window {
        self.window
    }

    fn apply(&mut self, g: &CoreTransformation) {
        apply_core(self.pencil, g, self.q.as_deref_mut());
    }

    fn zero_at(&mut self, i: usize, j: usize) {
        let z = Complex64::new(0.0, 0.0);
        let (a, b) = self.pencil.parts_mut();
        a[(i, j)] = z;
        b[(i, j)] = z;
        a[(j, i)] = z;
        b[(j, i)] = z;
    }

    pub fn pole(&self, k: usize) -> HomogeneousValue {
        let (i, j) = self.window.pole_position(k);
        HomogeneousValue {
            alpha: self.pencil.a()[(i, j)],
            beta: self.pencil.b()[(i, j)],
        }
    }

    /// Replaces window pole 1 by `rho`; pole `m-1` becomes its companion.
    pub fn move_i(&mut self, rho: &HomogeneousValue) -> Result<CoreTransformation> {
        let m = self.window.len;
        if m < 3 {
            return Err(Error::Shape("move I needs a window of size at least 3"));
        }
        let d = self.window.offset;
        let r = d + m - 2;
        let (a, b) = (self.pencil.a(), self.pencil.b());
        let w0 = rho.beta * a[(r, d)] - rho.alpha * b[(r, d)];
        let w1 = rho.beta * a[(r + 1, d)] - rho.alpha * b[(r + 1, d)];
        if w0 == Complex64::new(0.0, 0.0) && w1 == Complex64::new(0.0, 0.0) {
            return Err(Error::DegenerateShift);
        }
        // scale before forming the core, w may be tiny
        let s = inv_scale(w0.norm().max(w1.norm()));
        let g = annihilator(r, [w0 * s, w1 * s])?;
        self.apply(&g);
        Ok(g)
    }

    /// Swaps window poles `k-1` and `k` away from the middle.
    pub fn move_ii(&mut self, k: usize) -> Result<[CoreTransformation; 2]> {
        let m = self.window.len;
        if k < 2 || k >= m {
            return Err(Error::Index {
                index: k,
                min: 2,
                max: m.saturating_sub(1),
            });
        }
        if !(2 * k < m || 2 * k > m + 2) {
            return Err(Error::MiddleIndex(k));
        }
        let d = self.window.offset;
        let r0 = d + m - k - 1;
        let c0 = d + k - 2;
        let (a, b) = (self.pencil.a(), self.pencil.b());
        let blk = |x: &CMatrix| [x[(r0, c0 + 1)], x[(r0 + 1, c0)], x[(r0 + 1, c0 + 1)]];
        let (ba, bb) = (blk(a), blk(b));
        let (sa, sb) = (inv_scale(max_abs(&ba)), inv_scale(max_abs(&bb)));
        let [a1, a2, a21] = ba.map(|z| z * sa);
        let [b1, b2, b21] = bb.map(|z| z * sb);
        check_separated(a1, a2, b1, b2)?;
        let z = rotation_from_vector(c0, [b1 * a21 - a1 * b21, a1 * b2 - b1 * a2])?;
        self.apply(&z);

        let (a, b) = (self.pencil.a(), self.pencil.b());
        let ua = [a[(r0, c0)], a[(r0 + 1, c0)]];
        let ub = [b[(r0, c0)], b[(r0 + 1, c0)]];
        let na =
            libm::hypot(ua[0].norm(), ua[1].norm()) * inv_scale(max_abs(&blk(a)).max(ua[0].norm()));
        let nb =
            libm::hypot(ub[0].norm(), ub[1].norm()) * inv_scale(max_abs(&blk(b)).max(ub[0].norm()));
        let u = if na >= nb { ua } else { ub };
        let s = inv_scale(u[0].norm().max(u[1].norm()));
        let ql = annihilator(r0, [u[0] * s, u[1] * s])?;
        self.apply(&ql);
        self.zero_at(r0, c0);
        Ok([z, ql])
    }

    /// Swaps the two middle poles (a companion pair).
    ///
    /// Runs up to `control.max_refines` refinements; the outcome reports
    /// whether the tolerance was met. The residual is set to zero either way.
    pub fn middle_swap(&mut self, control: &SwapControl) -> Result<SwapOutcome> {
        let m = self.window.len;
        if m < 3 {
            return Err(Error::Shape(
                "middle swap needs a window of size at least 3",
            ));
        }
        let odd = m % 2 == 1;
        let mut cores = if odd {
            middle::swap_odd(self)?
        } else {
            middle::swap_even(self)?
        };
        let initial = self.middle_residual();
        let mut residual = initial;
        let mut refinements = 0;
        while !residual.within(control.tol_factor) && refinements < control.max_refines {
            if odd {
                cores.push(middle::refine_odd(self)?);
            } else {
                cores.extend(middle::refine_even(self)?);
            }
            refinements += 1;
            residual = self.middle_residual();
        }
        let converged = residual.within(control.tol_factor);
        self.clear_middle_residual();
        Ok(SwapOutcome {
            cores,
            refinements,
            initial,
            residual,
            converged,
            odd,
        })
    }

    /// One refinement step of an already swapped middle block.
    pub fn refine_middle(&mut self) -> Result<SwapResidual> {
        if self.window.len % 2 == 1 {
            middle::refine_odd(self)?;
        } else {
            middle::refine_even(self)?;
        }
        Ok(self.middle_residual())
    }

    fn middle_corner(&self) -> usize {
        middle_corner(self.window)
    }

    pub fn middle_residual(&self) -> SwapResidual {
        residual_of(self.pencil, self.window)
    }

    fn clear_middle_residual(&mut self) {
        let c = self.middle_corner();
        let z = Complex64::new(0.0, 0.0);
        let even = self.window.len.is_multiple_of(2);
        let (a, b) = self.pencil.parts_mut();
        a[(c, c)] = z;
        b[(c, c)] = z;
        if even {
            for (i, j) in [(c, c + 1), (c + 1, c)] {
                a[(i, j)] = z;
                b[(i, j)] = z;
            }
        }
    }
}

fn middle_corner(w: Window) -> usize {
    let m = w.len;
    w.offset + if m % 2 == 1 { (m - 3) / 2 } else { m / 2 - 2 }
}

fn residual_of(p: &StructuredPencil, w: Window) -> SwapResidual {
    let c = middle_corner(w);
    let (a, b) = (p.a(), p.b());
    let z = Complex64::new(0.0, 0.0);
    if w.len % 2 == 1 {
        SwapResidual {
            a: [a[(c, c)], z, z],
            b: [b[(c, c)], z, z],
            len: 1,
            norm_a: a.submatrix(c, c, 2, 2).frobenius_norm(),
            norm_b: b.submatrix(c, c, 2, 2).frobenius_norm(),
        }
    } else {
        SwapResidual {
            a: [a[(c, c)], a[(c, c + 1)], a[(c + 1, c)]],
            b: [b[(c, c)], b[(c, c + 1)], b[(c + 1, c)]],
            len: 3,
            norm_a: a.submatrix(c, c, 3, 3).frobenius_norm(),
            norm_b: b.submatrix(c, c, 3, 3).frobenius_norm(),
        }
    }
}

/// Replaces `σ_1` by `rho` (and `σ_{n-1}` by its companion).
pub fn move_i(p: &mut StructuredPencil, rho: &HomogeneousValue) -> Result<CoreTransformation> {
    let n = p.n();
    MoveSite::new(p, Window::full(n), None).move_i(rho)
}

/// Swaps `σ_{k-1}` and `σ_k` (and their mirror images). Valid for
/// `1 < k < n/2` or `n/2 + 1 < k < n`.
pub fn move_ii(p: &mut StructuredPencil, k: usize) -> Result<[CoreTransformation; 2]> {
    let n = p.n();
    MoveSite::new(p, Window::full(n), None).move_ii(k)
}

fn middle(p: &mut StructuredPencil, odd: bool, max_refines: usize) -> Result<SwapOutcome> {
    let n = p.n();
    if n < 3 || (n % 2 == 1) != odd {
        return Err(Error::Parity(if odd { "odd" } else { "even" }));
    }
    let control = SwapControl {
        max_refines,
        ..SwapControl::default()
    };
    let out = MoveSite::new(p, Window::full(n), None).middle_swap(&control)?;
    if !out.converged {
        return Err(Error::RefinementLimit(max_refines));
    }
    Ok(out)
}

/// Middle swap for odd `n`: exchanges `σ_{(n-1)/2}` and `σ_{(n+1)/2}`.
pub fn move_iio(p: &mut StructuredPencil, max_refines: usize) -> Result<SwapOutcome> {
    middle(p, true, max_refines)
}

/// Middle swap for even `n`: exchanges `σ_{n/2-1}` and `σ_{n/2+1}` across the
/// unimodular (resp. imaginary) middle pole `σ_{n/2}`.
pub fn move_iie(p: &mut StructuredPencil, max_refines: usize) -> Result<SwapOutcome> {
    middle(p, false, max_refines)
}

/// One refinement of the middle block for odd `n`.
pub fn refine_iio(p: &mut StructuredPencil) -> Result<SwapResidual> {
    let n = p.n();
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Parity("odd"));
    }
    MoveSite::new(p, Window::full(n), None).refine_middle()
}

/// One refinement of the middle block for even `n`.
pub fn refine_iie(p: &mut StructuredPencil) -> Result<SwapResidual> {
    let n = p.n();
    if n < 4 || n % 2 == 1 {
        return Err(Error::Parity("even"));
    }
    MoveSite::new(p, Window::full(n), None).refine_middle()
}

/// Residual of the middle block of the whole pencil.
pub fn middle_swap_residual(p: &StructuredPencil) -> Result<SwapResidual> {
    if p.n() < 3 {
        return Err(Error::Shape("no middle block below n = 3"));
    }
    Ok(residual_of(p, Window::full(p.n())))
}

#[cfg(test)]
mod tests;
