//! Fixture lattices for `kappalat generate`.

use crate::meta::Meta;
use crate::CliError;
use kappalat::generators::{
    boolean_lattice, chain_lattice, downset_lattice, tamari, weak_order, AlgebraError,
    AlgebraModel, GeneratorError, Interval, Poset, DEFAULT_MAX_INDECOMPOSABLES,
};
use kappalat::lattice::serialize_lattice;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Boolean,
    Chain,
    Downset,
    Tamari,
    WeakOrder,
    NakayamaTors,
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n: Option<usize>,
    /// Forbidden intervals for `nakayama_tors`.
    pub forbid: Vec<Interval>,
    /// Relations `a < b` for `downset`.
    pub relations: Vec<(usize, usize)>,
    pub max_indecomposables: Option<usize>,
}

fn from_generator(e: GeneratorError) -> CliError {
    match e {
        GeneratorError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

fn from_algebra(e: AlgebraError) -> CliError {
    match e {
        AlgebraError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
        other => CliError::Input(other.to_string()),
    }
}

/// The lattice-v1 text of the requested fixture, with brick metadata for
/// torsion-class lattices.
pub fn generate(family: Family, p: &Params) -> Result<String, CliError> {
    let n =
        p.n.ok_or_else(|| CliError::Input("--n is required".into()))?;
    if family != Family::NakayamaTors && !p.forbid.is_empty() {
        return Err(CliError::Input(
            "--forbid only applies to nakayama_tors".into(),
        ));
    }
    if family != Family::Downset && !p.relations.is_empty() {
        return Err(CliError::Input("--rel only applies to downset".into()));
    }
    let l = match family {
        Family::Boolean => boolean_lattice(n).map_err(from_generator)?,
        Family::Chain => chain_lattice(n),
        Family::Downset => {
            let poset = Poset::new(n, &p.relations).map_err(from_generator)?;
            downset_lattice(&poset).map_err(from_generator)?
        }
        Family::Tamari => tamari(n).map_err(from_generator)?,
        Family::WeakOrder => weak_order(n).map_err(from_generator)?,
        Family::NakayamaTors => {
            let model = AlgebraModel::nakayama(n, &p.forbid).map_err(from_algebra)?;
            let t = model
                .torsion_classes(p.max_indecomposables.unwrap_or(DEFAULT_MAX_INDECOMPOSABLES))
                .map_err(from_algebra)?;
            let mut text = serialize_lattice(&t.lattice);
            text.push_str(&Meta::render(&t));
            return Ok(text);
        }
    };
    Ok(serialize_lattice(&l))
}
