use crate::algebra::{commutator, AlgebraElement};
use crate::error::{Result, Sp4Error};
use crate::numerics::{central_diff_order, TimeGrid, C64};

/// `max_k |i hbar dI/dt - [H, I]|` over interior samples, with the derivative
/// from fourth-order central differences of the samples.
pub fn lr_residual_samples(
    invariant: &[AlgebraElement],
    hamiltonian: &[AlgebraElement],
    step: f64,
    hbar: f64,
) -> Result<f64> {
    lr_residual_samples_with_order(invariant, hamiltonian, step, hbar, 4)
}

/// As [`lr_residual_samples`] with a central stencil of the given order.
pub fn lr_residual_samples_with_order(
    invariant: &[AlgebraElement],
    hamiltonian: &[AlgebraElement],
    step: f64,
    hbar: f64,
    order: usize,
) -> Result<f64> {
    if invariant.len() != hamiltonian.len() {
        return Err(Sp4Error::InvalidGrid(format!(
            "{} invariant samples but {} Hamiltonian samples",
            invariant.len(),
            hamiltonian.len()
        )));
    }
    let di = central_diff_order(invariant, step, order)?;
    let off = order / 2;
    let ih = C64::new(0.0, hbar);
    Ok(di
        .iter()
        .enumerate()
        .map(|(k, d)| (*d * ih - commutator(&hamiltonian[k + off], &invariant[k + off])).max_abs())
        .fold(0.0, f64::max))
}

/// As [`lr_residual_samples`], sampling `invariant` and `hamiltonian` on a
/// uniform grid.
pub fn lr_residual<FI, FH>(
    invariant: FI,
    hamiltonian: FH,
    grid: &TimeGrid,
    hbar: f64,
) -> Result<f64>
where
    FI: Fn(f64) -> Result<AlgebraElement>,
    FH: Fn(f64) -> Result<AlgebraElement>,
{
    let step = grid
        .uniform_step()
        .ok_or_else(|| Sp4Error::InvalidGrid("finite differences need a uniform grid".into()))?;
    let i: Vec<_> = grid.iter().map(&invariant).collect::<Result<_>>()?;
    let h: Vec<_> = grid.iter().map(&hamiltonian).collect::<Result<_>>()?;
    lr_residual_samples(&i, &h, step, hbar)
}
