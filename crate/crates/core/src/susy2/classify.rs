//! Admissibility rules (i)–(vi) for two real seeds.

use crate::error::{Error, Result};
use crate::potential::{
    shifted_coefficient, wronskian_exponent, EndpointCoefficients, Provenance, SpectralDesign,
    LEVEL_POOL,
};
use crate::seed::SeedSpec;
use crate::trm::{predicted_node_count, TrmParams};

#[derive(Debug, Clone, Copy)]
enum Class {
    Bound(usize),
    Boundary { gap: i64 },
    General { gap: i64, nodes: usize },
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidSeedCombination(msg.into())
}

fn classify(p: &TrmParams, seed: &SeedSpec) -> Result<Class> {
    if let SeedSpec::Bound { n } = seed {
        return Ok(Class::Bound(*n));
    }
    if let SeedSpec::Complex { .. } = seed {
        return Err(invalid("the real case takes real seeds only"));
    }
    let e = seed.real_energy(p)?;
    let gap = p.gap_index(e)?.map_or(-1, |j| j as i64);
    match seed {
        SeedSpec::General { lambda, .. } if *lambda != 0.0 => Ok(Class::General {
            gap,
            nodes: predicted_node_count(p, e, *lambda)?,
        }),
        _ => Ok(Class::Boundary { gap }),
    }
}

fn gap_name(gap: i64) -> String {
    if gap < 0 {
        "below E0".to_string()
    } else {
        format!("gap {gap}")
    }
}

fn adjacent(level: usize, gap: i64) -> bool {
    gap == level as i64 || gap == level as i64 - 1
}

/// Classify a seed pair (ε₁ > ε₂) into sub-cases (i)–(vi) and predict the
/// resulting spectrum.
pub fn validate_real_case(
    p: &TrmParams,
    seed1: &SeedSpec,
    seed2: &SeedSpec,
) -> Result<SpectralDesign> {
    let c1 = classify(p, seed1)?;
    let c2 = classify(p, seed2)?;
    let e1 = seed1.real_energy(p)?;
    let e2 = seed2.real_energy(p)?;
    if !(e1 > e2) {
        return Err(invalid(format!(
            "the real case needs epsilon1 > epsilon2, got {e1} and {e2}"
        )));
    }

    let mut spectrum = p.spectrum(LEVEL_POOL);
    let remove = |spectrum: &mut Vec<f64>, n: usize| spectrum.retain(|&e| e != p.bound_energy(n));

    let provenance = match (c1, c2) {
        (Class::Bound(n1), Class::Bound(n2)) => {
            if n1 != n2 + 1 {
                return Err(invalid(format!(
                    "(i) needs consecutive bound states psi_(j+1), psi_j; got {n1} and {n2}"
                )));
            }
            remove(&mut spectrum, n1);
            remove(&mut spectrum, n2);
            Provenance::DeleteTwo
        }
        (Class::General { gap: g1, nodes: k1 }, Class::General { gap: g2, nodes: k2 }) => {
            if g1 != g2 {
                return Err(invalid(format!(
                    "(ii) needs both energies in one gap; got {} and {}",
                    gap_name(g1),
                    gap_name(g2)
                )));
            }
            let j = g1;
            if k1 as i64 != j + 1 || k2 as i64 != j + 2 {
                return Err(invalid(format!(
                    "(ii) needs {} nodes for seed 1 and {} for seed 2 in {}; the lambda signs give {k1} and {k2}",
                    j + 1,
                    j + 2,
                    gap_name(j)
                )));
            }
            spectrum.push(e1);
            spectrum.push(e2);
            Provenance::CreateTwo
        }
        (Class::Boundary { gap: g1 }, Class::General { gap: g2, nodes }) => {
            if g1 != g2 {
                return Err(invalid("(iii) needs both energies in one gap"));
            }
            if nodes as i64 != g1 + 2 {
                return Err(invalid(format!(
                    "(iii) with a pure L/R seed 1 needs {} nodes for seed 2; it has {nodes}",
                    g1 + 2
                )));
            }
            spectrum.push(e2);
            Provenance::CreateOne
        }
        (Class::General { gap: g1, nodes }, Class::Boundary { gap: g2 }) => {
            if g1 != g2 {
                return Err(invalid("(iii) needs both energies in one gap"));
            }
            if nodes as i64 != g1 + 1 {
                return Err(invalid(format!(
                    "(iii) with a pure L/R seed 2 needs {} nodes for seed 1; it has {nodes}",
                    g1 + 1
                )));
            }
            spectrum.push(e1);
            Provenance::CreateOne
        }
        (Class::Bound(j), Class::General { gap, nodes })
        | (Class::General { gap, nodes }, Class::Bound(j)) => {
            if !adjacent(j, gap) {
                return Err(invalid(format!(
                    "(iv) needs the general seed in a gap next to E{j}; it lies in {}",
                    gap_name(gap)
                )));
            }
            if nodes != j + 1 {
                return Err(invalid(format!(
                    "(iv) needs a general seed with {} nodes; it has {nodes}",
                    j + 1
                )));
            }
            remove(&mut spectrum, j);
            spectrum.push(if matches!(c1, Class::Bound(_)) {
                e2
            } else {
                e1
            });
            Provenance::MoveOne
        }
        (Class::Bound(j), Class::Boundary { gap }) | (Class::Boundary { gap }, Class::Bound(j)) => {
            if !adjacent(j, gap) {
                return Err(invalid(format!(
                    "(v) needs the L/R seed in a gap next to E{j}; it lies in {}",
                    gap_name(gap)
                )));
            }
            remove(&mut spectrum, j);
            Provenance::DeleteOne
        }
        (Class::Boundary { gap: g1 }, Class::Boundary { gap: g2 }) => {
            if g1 != g2 {
                return Err(invalid("(vi) needs both L/R seeds in one gap"));
            }
            Provenance::RealIsospectral
        }
    };

    let a = p.a();
    let (l1, r1) = seed1.endpoints();
    let (l2, r2) = seed2.endpoints();
    let coefficients = EndpointCoefficients::new(
        shifted_coefficient(a, wronskian_exponent(a, l1, l2)),
        shifted_coefficient(a, wronskian_exponent(a, r1, r2)),
    );
    Ok(SpectralDesign::new(provenance, spectrum, coefficients))
}
