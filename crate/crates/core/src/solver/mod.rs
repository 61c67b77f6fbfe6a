//! Structured pole-swapping QZ.
//!
//! Each sweep inserts a shift `ρ` as pole 1 (and `ρ̃` as pole `m-1`), chases
//! the pair to the middle, swaps it there and chases it out again; the
//! original first pole is put back at the end. Converged companion pairs
//! deflate from both ends of the active window at once.

mod fallback;
mod shift;

pub use shift::{exceptional_shift, guard_shift, quadratic_roots, wilkinson_shift};

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::moves::{MoveSite, MoveStats, SwapControl, Window};
use crate::pencil::{HomogeneousValue, StructureKind, StructuredPencil};
use crate::verify;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShiftStrategy {
    /// `a_{1,n}/b_{1,n}` of the active window.
    Rayleigh,
    /// Root of the top-right 2×2 block nearest to the Rayleigh value.
    Wilkinson,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Sweeps without deflation before an exceptional shift, and again before giving up.
    pub max_iterations_per_deflation: usize,
    pub shift_strategy: ShiftStrategy,
    pub shift_guard_gap: f64,
    pub deflation_tolerance_factor: f64,
    pub swap: SwapControl,
    pub accumulate_q: bool,
    /// Finish a stalled window with unstructured RQZ instead of failing.
    pub unstructured_fallback: bool,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            max_iterations_per_deflation: 30,
            shift_strategy: ShiftStrategy::Wilkinson,
            shift_guard_gap: 1e-3,
            deflation_tolerance_factor: 10.0,
            swap: SwapControl::default(),
            accumulate_q: false,
            unstructured_fallback: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenSource {
    /// Deflated at the window ends as a companion pair.
    Deflated,
    /// From the final 1×1 or 2×2 window.
    Terminal,
    /// From the unstructured fallback on a stalled window.
    Fallback,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Eigenvalue {
    pub value: HomogeneousValue,
    /// Index of the companion in [`SolveReport::eigenvalues`]; `None` when
    /// the eigenvalue is its own companion.
    pub partner: Option<usize>,
    pub source: EigenSource,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub kind: StructureKind,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Final `Q^*AQ`, `Q^*BQ`: anti-triangular up to a centre block of size `center_len`.
    pub s_a: CMatrix,
    pub s_b: CMatrix,
    pub q: Option<CMatrix>,
    pub stats: MoveStats,
    pub iterations: usize,
    pub center_len: usize,
    /// Filled when `Q` was accumulated.
    pub backward_error: Option<f64>,
}

impl SolveReport {
    pub fn values(&self) -> Vec<HomogeneousValue> {
        self.eigenvalues.iter().map(|e| e.value).collect()
    }
}

fn validate_options(o: &SolverOptions) -> Result<()> {
    if !(o.shift_guard_gap > 0.0 && o.shift_guard_gap < 1.0) {
        return Err(Error::Guard("shift_guard_gap must lie in (0, 1)"));
    }
    if !(o.deflation_tolerance_factor > 0.0)
        || !(o.swap.tol_factor > 0.0)
        || o.max_iterations_per_deflation == 0
    {
        return Err(Error::Structure(
            "tolerance factors and iteration limits must be positive",
        ));
    }
    Ok(())
}

/// Pairs eigenvalues with their companions and projects self-companion ones.
///
/// `i` and `j` pair when each is the other's nearest companion match and the
/// match is closer than half of `i`'s distance to its own companion.
fn classify(
    values: &[HomogeneousValue],
    kind: StructureKind,
) -> Vec<(HomogeneousValue, Option<usize>)> {
    let n = values.len();
    let comp: Vec<HomogeneousValue> = values.iter().map(|v| v.companion(kind)).collect();
    let selfd: Vec<f64> = values
        .iter()
        .zip(&comp)
        .map(|(v, c)| v.chordal_distance(c))
        .collect();
    let nearest = |i: usize| {
        (0..n)
            .filter(|&j| j != i)
            .map(|j| (j, values[j].chordal_distance(&comp[i])))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
    };
    let mut out: Vec<(HomogeneousValue, Option<usize>)> =
        values.iter().map(|v| (*v, None)).collect();
    let mut done = alloc::vec![false; n];
    for i in 0..n {
        if done[i] {
            continue;
        }
        if let Some((j, d)) = nearest(i) {
            if !done[j] && nearest(j).map(|x| x.0) == Some(i) && d < 0.5 * selfd[i] {
                out[i] = (values[i], Some(j));
                out[j] = (comp[i], Some(i));
                done[i] = true;
                done[j] = true;
                continue;
            }
        }
        done[i] = true;
        if selfd[i] <= 1e-6 {
            out[i] = (values[i].project_self_paired(kind), None);
        }
    }
    out
}

struct Solver<'o> {
    p: StructuredPencil,
    q: Option<CMatrix>,
    opts: &'o SolverOptions,
    stats: MoveStats,
    iterations: usize,
    tol_a: f64,
    tol_b: f64,
    eig: Vec<Eigenvalue>,
}

impl Solver<'_> {
    fn site(&mut self, w: Window) -> MoveSite<'_> {
        MoveSite::new(&mut self.p, w, self.q.as_mut())
    }

    fn entry(&self, i: usize, j: usize) -> HomogeneousValue {
        HomogeneousValue {
            alpha: self.p.a()[(i, j)],
            beta: self.p.b()[(i, j)],
        }
    }

    fn push_pair(&mut self, v: HomogeneousValue, source: EigenSource) {
        let i = self.eig.len();
        let kind = self.p.kind();
        self.eig.push(Eigenvalue {
            value: v,
            partner: Some(i + 1),
            source,
        });
        self.eig.push(Eigenvalue {
            value: v.companion(kind),
            partner: Some(i),
            source,
        });
    }

    fn push_classified(&mut self, values: &[HomogeneousValue], source: EigenSource) {
        let base = self.eig.len();
        for (v, partner) in classify(values, self.p.kind()) {
            self.eig.push(Eigenvalue {
                value: v,
                partner: partner.map(|j| base + j),
                source,
            });
        }
    }

    fn try_deflate(&mut self, w: Window) -> Result<bool> {
        let (i, j) = w.pole_position(1);
        let (a, b) = (self.p.a()[(i, j)], self.p.b()[(i, j)]);
        if a.norm() > self.tol_a || b.norm() > self.tol_b {
            return Ok(false);
        }
        let lam = self.entry(i + 1, j);
        if lam.alpha == Complex64::new(0.0, 0.0) && lam.beta == Complex64::new(0.0, 0.0) {
            return Err(Error::DegeneratePencil("deflated eigenvalue is (0, 0)"));
        }
        let z = Complex64::new(0.0, 0.0);
        let (pa, pb) = self.p.parts_mut();
        for (r, c) in [(i, j), (j, i)] {
            pa[(r, c)] = z;
            pb[(r, c)] = z;
        }
        self.push_pair(lam, EigenSource::Deflated);
        Ok(true)
    }

    fn choose_shift(&self, w: Window, exceptional: bool) -> Result<HomogeneousValue> {
        let (d, m) = (w.offset, w.len);
        let kind = self.p.kind();
        let rayleigh =
            HomogeneousValue::new(self.p.a()[(d, d + m - 1)], self.p.b()[(d, d + m - 1)])
                .unwrap_or(HomogeneousValue::infinity());
        let gap = self.opts.shift_guard_gap;
        if !exceptional {
            let raw = match self.opts.shift_strategy {
                ShiftStrategy::Rayleigh => Ok(rayleigh),
                ShiftStrategy::Wilkinson => {
                    let blk = |x: &CMatrix| {
                        [
                            [x[(d, d + m - 2)], x[(d, d + m - 1)]],
                            [x[(d + 1, d + m - 2)], x[(d + 1, d + m - 1)]],
                        ]
                    };
                    wilkinson_shift(blk(self.p.a()), blk(self.p.b()), &rayleigh)
                }
            };
            if let Ok(g) = raw.and_then(|r| guard_shift(&r, kind, gap)) {
                return Ok(g);
            }
        }
        let mut counter = self.iterations as u64;
        loop {
            let e = exceptional_shift(&rayleigh, kind, counter);
            if let Ok(g) = guard_shift(&e, kind, gap) {
                return Ok(g);
            }
            counter = counter.wrapping_add(1);
        }
    }

    fn sweep(&mut self, w: Window, rho: &HomogeneousValue) -> Result<()> {
        let m = w.len;
        let control = self.opts.swap;
        let mut stats = MoveStats::default();
        let mut site = self.site(w);
        let sigma1 = site.pole(1);
        site.move_i(rho)?;
        stats.type_i += 1;
        let (inward, outward) = if m % 2 == 1 {
            ((m - 1) / 2, (m + 3) / 2)
        } else {
            (m / 2 - 1, m / 2 + 2)
        };
        for k in 2..=inward {
            site.move_ii(k)?;
            stats.type_ii += 1;
        }
        let out = site.middle_swap(&control)?;
        if !out.converged {
            return Err(Error::RefinementLimit(control.max_refines));
        }
        stats.merge(&out.stats());
        for k in outward..m {
            site.move_ii(k)?;
            stats.type_ii += 1;
        }
        site.move_i(&sigma1)?;
        stats.type_i += 1;
        self.stats.merge(&stats);
        self.iterations += 1;
        Ok(())
    }

    /// Runs sweeps on the window until one deflation; `Ok(false)` means it stalled.
    fn converge_once(&mut self, w: Window) -> Result<bool> {
        let limit = self.opts.max_iterations_per_deflation;
        for phase in 0..2 {
            for it in 0..limit {
                if self.try_deflate(w)? {
                    return Ok(true);
                }
                let rho = self.choose_shift(w, phase == 1 && it == 0)?;
                self.sweep(w, &rho)?;
            }
        }
        self.try_deflate(w)
    }

    fn terminal(&mut self, w: Window) -> Result<()> {
        let d = w.offset;
        match w.len {
            0 => {}
            1 => {
                let v = HomogeneousValue::new(self.p.a()[(d, d)], self.p.b()[(d, d)])
                    .map_err(|_| Error::DegeneratePencil("1x1 block is (0, 0)"))?;
                self.push_classified(&[v], EigenSource::Terminal);
            }
            2 => {
                let blk = |x: &CMatrix| {
                    [
                        [x[(d, d)], x[(d, d + 1)]],
                        [x[(d + 1, d)], x[(d + 1, d + 1)]],
                    ]
                };
                let roots = quadratic_roots(blk(self.p.a()), blk(self.p.b()))?;
                self.push_classified(&roots, EigenSource::Terminal);
            }
            _ => unreachable!("terminal windows have size below 3"),
        }
        Ok(())
    }
}

/// Eigenvalues of a structured anti-Hessenberg pencil.
pub fn solve(p: &StructuredPencil, opts: &SolverOptions) -> Result<SolveReport> {
    validate_options(opts)?;
    let n = p.n();
    let norm_a = p.a().frobenius_norm();
    let norm_b = p.b().frobenius_norm();
    let tiny = 10.0 * f64::EPSILON * norm_a.max(norm_b);
    for k in 1..n {
        let s = p.pole_at(k)?;
        if s.alpha.norm() + s.beta.norm() <= tiny {
            return Err(Error::SingularPole(k));
        }
    }
    let f = opts.deflation_tolerance_factor * f64::EPSILON;
    let mut sv = Solver {
        p: p.clone(),
        q: if opts.accumulate_q {
            Some(CMatrix::identity(n))
        } else {
            None
        },
        opts,
        stats: MoveStats::default(),
        iterations: 0,
        tol_a: f * norm_a,
        tol_b: f * norm_b,
        eig: Vec::with_capacity(n),
    };
    let mut w = Window::full(n);
    let mut center_len = 0;
    while w.len >= 3 {
        if sv.converge_once(w)? {
            w = Window {
                offset: w.offset + 1,
                len: w.len - 2,
            };
            continue;
        }
        if !opts.unstructured_fallback {
            return Err(Error::Convergence {
                window: w.len,
                sweeps: 2 * opts.max_iterations_per_deflation,
            });
        }
        let (d, m) = (w.offset, w.len);
        let vals = fallback::unstructured_eigenvalues(
            &sv.p.a().submatrix(d, d, m, m),
            &sv.p.b().submatrix(d, d, m, m),
            p.kind(),
        )?;
        sv.push_classified(&vals, EigenSource::Fallback);
        center_len = m;
        w.len = 0;
    }
    sv.terminal(w)?;
    let Solver {
        p: s,
        q,
        stats,
        iterations,
        eig,
        ..
    } = sv;
    let (s_a, s_b) = s.into_parts();
    let backward_error = match &q {
        Some(q) => Some(verify::backward_error(p, q, &s_a, &s_b)?),
        None => None,
    };
    Ok(SolveReport {
        kind: p.kind(),
        eigenvalues: eig,
        s_a,
        s_b,
        q,
        stats,
        iterations,
        center_len,
        backward_error,
    })
}

#[cfg(test)]
mod tests;
