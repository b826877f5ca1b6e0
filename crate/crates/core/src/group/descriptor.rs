use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DivisibilityGroup, ZdElement, ZdGroup};
use crate::error::Result;
use crate::number_ring::CubicField;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupKind {
    ConeZd,
    DiscreteZ,
    Divisibility,
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupKind::ConeZd => "cone-zd",
            GroupKind::DiscreteZ => "discrete-z",
            GroupKind::Divisibility => "divisibility",
        })
    }
}

/// Serializable description of a group instance.
///
/// ```json
/// {"kind": "cone-zd", "d": 1, "P": [60]}
/// {"kind": "discrete-z"}
/// {"kind": "divisibility", "poly": [1, -1, 1, 7]}
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum GroupDescriptor {
    ConeZd {
        d: usize,
        #[serde(rename = "P")]
        generators: Vec<ZdElement>,
    },
    DiscreteZ,
    /// Monic cubic, coefficients from the leading one down.
    Divisibility {
        poly: Vec<i64>,
    },
}

impl GroupDescriptor {
    pub fn kind(&self) -> GroupKind {
        match self {
            GroupDescriptor::ConeZd { .. } => GroupKind::ConeZd,
            GroupDescriptor::DiscreteZ => GroupKind::DiscreteZ,
            GroupDescriptor::Divisibility { .. } => GroupKind::Divisibility,
        }
    }

    pub fn build(&self) -> Result<AnyGroup> {
        Ok(match self {
            GroupDescriptor::ConeZd { d, generators } => {
                AnyGroup::Zd(ZdGroup::cone(*d, generators.clone())?)
            }
            GroupDescriptor::DiscreteZ => AnyGroup::Zd(ZdGroup::discrete()),
            GroupDescriptor::Divisibility { poly } => {
                AnyGroup::Divisibility(DivisibilityGroup::new(CubicField::new(poly)?))
            }
        })
    }
}

/// A constructed group of either element type.
#[derive(Clone, Debug)]
pub enum AnyGroup {
    Zd(ZdGroup),
    Divisibility(DivisibilityGroup),
}
