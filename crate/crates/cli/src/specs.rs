use std::fs;

use anyhow::{anyhow, bail, Context, Result};
use omegalat::algebra::{example_algebra, incidence_algebra, linear_a, Algebra, AlgebraJson};
use omegalat::poset::{interval_poset, Poset, PosetJson};
use omegalat::Fp;

/// `int:k` or a JSON file holding `{"elements": [..], "leq": [[a, b], ..]}`.
pub fn parse_poset(spec: &str) -> Result<Poset> {
    if let Some(rest) = spec.strip_prefix("int:") {
        let k = parse_count(spec, rest, 4)?;
        return Ok(interval_poset(k)?);
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading poset file {spec}"))?;
    let json: PosetJson = serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    Ok(Poset::from_json(&json)?)
}

/// `example`, `int:k` (incidence algebra of the interval poset), `An:k`
/// (equioriented linear quiver) or a JSON file. `field` overrides the field
/// of a JSON algebra when given.
pub fn parse_algebra(spec: &str, field: Option<u32>) -> Result<Algebra> {
    let builtin_field = Fp::new(field.unwrap_or(2))?;
    if spec == "example" {
        return Ok(example_algebra(builtin_field));
    }
    if let Some(rest) = spec.strip_prefix("int:") {
        let k = parse_count(spec, rest, 4)?;
        return Ok(incidence_algebra(&interval_poset(k)?, builtin_field));
    }
    if let Some(rest) = spec.strip_prefix("An:") {
        let k = parse_count(spec, rest, 3)?;
        return Ok(linear_a(k, builtin_field));
    }
    let text = fs::read_to_string(spec).with_context(|| format!("reading algebra file {spec}"))?;
    let json: AlgebraJson =
        serde_json::from_str(&text).with_context(|| format!("parsing {spec}"))?;
    let alg = Algebra::from_json(&json)?;
    match field {
        Some(p) => Ok(alg.with_field(Fp::new(p)?)?),
        None => Ok(alg),
    }
}

fn parse_count(spec: &str, digits: &str, offset: usize) -> Result<usize> {
    let k: usize = digits.parse().map_err(|_| {
        anyhow!(
            "{spec}: expected a positive integer at position {}",
            offset + 1
        )
    })?;
    if k == 0 {
        bail!(
            "{spec}: expected a positive integer at position {}",
            offset + 1
        );
    }
    Ok(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_specs() {
        assert_eq!(parse_poset("int:3").unwrap().len(), 6);
        assert_eq!(parse_algebra("example", None).unwrap().dim(), 5);
        assert_eq!(parse_algebra("An:3", None).unwrap().num_vertices(), 3);
        assert_eq!(parse_algebra("int:2", Some(3)).unwrap().field().p(), 3);
    }

    #[test]
    fn bad_specs_name_the_position() {
        let e = parse_poset("int:x").unwrap_err().to_string();
        assert!(e.contains("position 5"), "{e}");
        assert!(parse_algebra("An:0", None).is_err());
        assert!(parse_algebra("int:2", Some(4)).is_err());
    }
}
