//! Group instances selected on the command line, and element parsing.

use num_bigint::BigInt;
use regent_core::group::{
    AnyGroup, DivisibilityGroup, Elem, FinSubset, GroupDescriptor, PreorderedGroup, ZdElement,
    ZdGroup,
};
use regent_core::instances;
use regent_core::number_ring::FieldElement;
use serde_json::Value;

use crate::error::{usage, CliResult};

#[derive(Clone, Debug)]
pub enum Instance {
    Zd(ZdGroup),
    Field(DivisibilityGroup),
}

impl Instance {
    /// `exa1`, `exa2`, `exa3`, or an inline group descriptor in JSON.
    pub fn parse(spec: &str) -> CliResult<Self> {
        match spec.trim() {
            "exa1" => Ok(Instance::Zd(instances::exa1_group())),
            "exa2" => Ok(Instance::Field(instances::exa2_group())),
            "exa3" => Ok(Instance::Zd(instances::exa3_group())),
            s if s.starts_with('{') => {
                let d: GroupDescriptor = serde_json::from_str(s)?;
                Instance::from_descriptor(&d)
            }
            other => Err(usage(format!(
                "unknown instance `{other}` (expected exa1, exa2, exa3 or a JSON descriptor)"
            ))),
        }
    }

    pub fn from_descriptor(d: &GroupDescriptor) -> CliResult<Self> {
        Ok(match d.build()? {
            AnyGroup::Zd(g) => Instance::Zd(g),
            AnyGroup::Divisibility(g) => Instance::Field(g),
        })
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        match self {
            Instance::Zd(g) => g.descriptor(),
            Instance::Field(g) => g.descriptor(),
        }
    }
}

/// `5`, `(1,2)` or `1,2`.
pub fn parse_zd(g: &ZdGroup, s: &str) -> CliResult<ZdElement> {
    let body = s.trim().trim_start_matches('(').trim_end_matches(')');
    let coords = body
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<BigInt>()
                .map_err(|e| usage(format!("bad integer `{c}` in `{s}`: {e}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let e = ZdElement::new(coords);
    g.validate(&e)?;
    Ok(e)
}

/// `y`, `z`, `t`, an integer, or three rational coordinates `c0,c1,c2`.
pub fn parse_field(g: &DivisibilityGroup, s: &str) -> CliResult<FieldElement> {
    let f = g.field();
    let e = match s.trim() {
        "y" => instances::exa2_y(f),
        "z" => instances::exa2_z(f),
        "t" => f.t(),
        body if body.contains(',') => body.parse::<FieldElement>()?,
        n => {
            let v: i64 = n
                .parse()
                .map_err(|_| usage(format!("bad field element `{s}`")))?;
            FieldElement::from_integers(&[v, 0, 0])
        }
    };
    g.validate(&e)?;
    Ok(e)
}

/// Groups whose elements can be written on the command line and in query
/// files.
pub trait CliGroup: PreorderedGroup {
    fn parse_element(&self, s: &str) -> CliResult<Elem<Self>>;

    /// A JSON string goes through [`CliGroup::parse_element`]; anything else
    /// must be the element's serialized form.
    fn element_from_value(&self, v: &Value) -> CliResult<Elem<Self>> {
        let e = match v {
            Value::String(s) => self.parse_element(s)?,
            Value::Number(n) => self.parse_element(&n.to_string())?,
            other => serde_json::from_value(other.clone())?,
        };
        self.validate(&e)?;
        Ok(e)
    }

    /// A single element, or a nonempty list of elements.
    fn subset_from_value(&self, v: &Value) -> CliResult<FinSubset<Elem<Self>>> {
        if let Ok(e) = self.element_from_value(v) {
            return Ok(FinSubset::singleton(e));
        }
        let Value::Array(items) = v else {
            return Err(usage(format!(
                "`{v}` is neither an element nor a list of elements"
            )));
        };
        let v = items
            .iter()
            .map(|i| self.element_from_value(i))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(FinSubset::new(v)?)
    }

    fn subset_from_strs(&self, items: &[String]) -> CliResult<FinSubset<Elem<Self>>> {
        let v = items
            .iter()
            .map(|s| self.parse_element(s))
            .collect::<CliResult<Vec<_>>>()?;
        Ok(FinSubset::new(v)?)
    }
}

impl CliGroup for ZdGroup {
    fn parse_element(&self, s: &str) -> CliResult<ZdElement> {
        parse_zd(self, s)
    }
}

impl CliGroup for DivisibilityGroup {
    fn parse_element(&self, s: &str) -> CliResult<FieldElement> {
        parse_field(self, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_and_descriptors() {
        assert!(matches!(
            Instance::parse("exa2").unwrap(),
            Instance::Field(_)
        ));
        let i = Instance::parse(r#"{"kind":"cone-zd","d":2,"P":[[1,0],[1,2]]}"#).unwrap();
        let Instance::Zd(g) = i else { panic!("zd") };
        assert_eq!(g.rank(), 2);
        assert_eq!(
            parse_zd(&g, "(3,-4)").unwrap(),
            ZdElement::from_i64s(&[3, -4])
        );
        assert!(parse_zd(&g, "3").is_err());
        assert!(Instance::parse("exa9").is_err());
    }

    #[test]
    fn field_names() {
        let g = instances::exa2_group();
        let y = parse_field(&g, "y").unwrap();
        assert_eq!(parse_field(&g, "1/2,0,1/2").unwrap(), y);
        assert!(parse_field(&g, "0").is_err());
    }

    #[test]
    fn values_as_elements_or_lists() {
        let g = instances::exa1_group();
        let one: Value = serde_json::json!(130);
        assert_eq!(g.subset_from_value(&one).unwrap().len(), 1);
        let two: Value = serde_json::json!([130, 84]);
        assert_eq!(g.subset_from_value(&two).unwrap().len(), 2);
        let plane = ZdGroup::cone(2, vec![ZdElement::from_i64s(&[1, 0])]).unwrap();
        assert_eq!(
            plane
                .subset_from_value(&serde_json::json!([1, 2]))
                .unwrap()
                .len(),
            1
        );
        assert_eq!(
            plane
                .subset_from_value(&serde_json::json!([[1, 2], "(3,4)"]))
                .unwrap()
                .len(),
            2
        );
        let k = instances::exa2_group();
        assert_eq!(
            k.subset_from_value(&serde_json::json!(["y", "z"]))
                .unwrap()
                .len(),
            2
        );
        assert_eq!(
            k.subset_from_value(&serde_json::json!(["1/2", "0", "1/2"]))
                .unwrap()
                .len(),
            1
        );
    }
}
