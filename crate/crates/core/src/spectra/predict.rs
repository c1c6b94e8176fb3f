//! Spectra of `S_k(G)`, `S_2k(G)` and their iterates, predicted from the
//! spectrum of `G` alone.

use num_traits::ToPrimitive;

use super::{cubic_roots, f_maps, Spectrum};
use crate::transforms::{predicted_sizes, Variant};
use crate::{caps, Error, Result};

/// Base eigenvalues split by branch: the ones that are exactly 0 or 2 after
/// snapping to the grouping tolerance, and the rest.
struct Classified {
    zeros: usize,
    twos: usize,
    interior: Vec<f64>,
}

fn classify(spec: &Spectrum, n: usize, bipartite: bool) -> Result<Classified> {
    if spec.len() != n {
        return Err(Error::SpectrumInconsistent(format!(
            "spectrum has {} values, graph has {n} vertices",
            spec.len()
        )));
    }
    let tol = spec.grouping_tol();
    let mut c = Classified {
        zeros: 0,
        twos: 0,
        interior: Vec::with_capacity(n),
    };
    for &x in spec.values() {
        if x.abs() <= tol {
            c.zeros += 1;
        } else if (x - 2.0).abs() <= tol {
            c.twos += 1;
        } else {
            c.interior.push(x);
        }
    }
    if c.zeros != 1 {
        return Err(Error::SpectrumInconsistent(format!(
            "eigenvalue 0 has multiplicity {}, expected 1",
            c.zeros
        )));
    }
    let want_twos = usize::from(bipartite);
    if c.twos != want_twos {
        return Err(Error::SpectrumInconsistent(format!(
            "eigenvalue 2 has multiplicity {}, expected {want_twos}",
            c.twos
        )));
    }
    Ok(c)
}

fn repeat(value: f64, count: i64, out: &mut Vec<f64>) -> Result<()> {
    if count < 0 {
        return Err(Error::MultiplicityUnderflow { value, count });
    }
    out.extend(std::iter::repeat_n(value, count as usize));
    Ok(())
}

/// Spectrum of `S_k(G)`: `f1(x), f2(x)` for every base eigenvalue other than
/// 0 and 2, plus `{0, 2}`, plus `1` with multiplicity `km - n` (`km - n + 2`
/// for bipartite `G`).
pub fn predicted_spectrum_sk(spec: &Spectrum, n: usize, m: usize, k: usize, bipartite: bool) -> Result<Spectrum> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let c = classify(spec, n, bipartite)?;
    let mut out = Vec::with_capacity(n + k * m);
    for &x in &c.interior {
        let (f1, f2) = f_maps(x)?;
        out.extend([f1, f2]);
    }
    out.extend([0.0, 2.0]);
    let extra = if bipartite { 2 } else { 0 };
    repeat(1.0, (k * m) as i64 - n as i64 + extra, &mut out)?;
    Ok(Spectrum::new(out, spec.grouping_tol()))
}

/// Spectrum of `S_2k(G)`: the three roots of `4x^3 - 12x^2 + 9x = lambda`
/// for every base eigenvalue other than 0 (and 2, when bipartite), plus 0
/// (and 2), plus `1/2` and `3/2` with the multiplicities below.
///
/// | `G`           | mult(1/2)    | mult(3/2)    |
/// |---------------|--------------|--------------|
/// | non-bipartite | `km - n`     | `km - n + 2` |
/// | bipartite     | `km - n + 2` | `km - n + 2` |
pub fn predicted_spectrum_s2k(spec: &Spectrum, n: usize, m: usize, k: usize, bipartite: bool) -> Result<Spectrum> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let c = classify(spec, n, bipartite)?;
    let mut out = Vec::with_capacity(n + 2 * k * m);
    for &x in &c.interior {
        out.extend(cubic_roots(x)?);
    }
    out.push(0.0);
    if bipartite {
        out.push(2.0);
    }
    let base = (k * m) as i64 - n as i64;
    repeat(0.5, if bipartite { base + 2 } else { base }, &mut out)?;
    repeat(1.5, base + 2, &mut out)?;
    Ok(Spectrum::new(out, spec.grouping_tol()))
}

pub fn predicted_spectrum(
    spec: &Spectrum,
    n: usize,
    m: usize,
    k: usize,
    variant: Variant,
    bipartite: bool,
) -> Result<Spectrum> {
    match variant {
        Variant::Sk => predicted_spectrum_sk(spec, n, m, k, bipartite),
        Variant::S2k => predicted_spectrum_s2k(spec, n, m, k, bipartite),
    }
}

/// Spectrum of the `r`-th iterate, by repeated one-step prediction. `S_k`
/// output is always bipartite; `S_2k` keeps the bipartiteness of its input.
#[allow(clippy::too_many_arguments)]
pub fn predicted_spectrum_iterated(
    spec: &Spectrum,
    n: usize,
    m: usize,
    k: usize,
    r: usize,
    variant: Variant,
    bipartite: bool,
    cap: usize,
) -> Result<Spectrum> {
    if k < 1 {
        return Err(Error::InvalidK(k));
    }
    let (final_n, _) = predicted_sizes(n, m, k, r, variant);
    caps::check("iterated spectrum", final_n.to_usize().unwrap_or(usize::MAX), cap)?;
    let mut current = spec.clone();
    let (mut n, mut m, mut bipartite) = (n, m, bipartite);
    for _ in 0..r {
        current = predicted_spectrum(&current, n, m, k, variant, bipartite)?;
        match variant {
            Variant::Sk => {
                n += k * m;
                m *= 2 * k;
                bipartite = true;
            }
            Variant::S2k => {
                n += 2 * k * m;
                m *= 3 * k;
            }
        }
    }
    Ok(current)
}
