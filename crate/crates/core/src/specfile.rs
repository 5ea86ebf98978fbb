//! JSON domain and sequence files, catalog resolution and the catalog hash
//! embedded in reports.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::domains::{catalog, DomainKind, DomainSpec, CATALOG_IDS};
use crate::error::{Error, Result};
use crate::scalar::{Exponent, GaussQ, Rat};
use crate::sequences::{catalog_sequence, ApproachSequence, SequenceFile, SEQUENCE_IDS};
use crate::weights::MultiWeight;
use crate::wpoly::{TermLiteral, WPolynomial};

/// On-disk form of a domain `{ρ < 0}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DomainFile {
    pub name: String,
    pub n: usize,
    pub defining: Vec<TermLiteral>,
    /// Rational weights such as `"1/4"`, nonincreasing.
    #[serde(default)]
    pub lambda: Option<Vec<String>>,
    /// `(2m_1, …, 2m_n)`; fixes `λ_k = 1/2m_k`.
    #[serde(default)]
    pub multitype: Option<Vec<u32>>,
    pub kind: DomainKind,
    /// Interior point as `[re, im]` rational pairs; defaults to `(0′, −1)`
    /// for models and the origin otherwise.
    #[serde(default)]
    pub witness: Option<Vec<[String; 2]>>,
}

#[derive(Clone, Debug)]
pub enum LoadedSpec {
    Domain(DomainSpec),
    Sequence(ApproachSequence),
}

fn parse_rat(field: &str, s: &str) -> Result<Rat> {
    s.trim().parse::<Rat>().map_err(|_| Error::Schema { field: field.into(), detail: format!("not a rational: {s:?}") })
}

fn parse_exponent(field: &str, s: &str) -> Result<Exponent> {
    s.trim().parse::<Exponent>().map_err(|_| Error::Schema { field: field.into(), detail: format!("not a rational: {s:?}") })
}

impl DomainFile {
    pub fn into_spec(self) -> Result<DomainSpec> {
        let defining = WPolynomial::from_literal(self.n, &self.defining)?;
        let lambda = match (&self.multitype, &self.lambda) {
            (Some(mt), given) => {
                let w = MultiWeight::from_multitype(mt)?;
                if let Some(ls) = given {
                    let ls = ls
                        .iter()
                        .enumerate()
                        .map(|(i, s)| parse_exponent(&format!("lambda[{i}]"), s))
                        .collect::<Result<Vec<_>>>()?;
                    if ls != w.lambdas() {
                        return Err(Error::InvariantViolation("lambda and multitype disagree".into()));
                    }
                }
                Some(w)
            }
            (None, Some(ls)) => {
                let ls = ls
                    .iter()
                    .enumerate()
                    .map(|(i, s)| parse_exponent(&format!("lambda[{i}]"), s))
                    .collect::<Result<Vec<_>>>()?;
                Some(MultiWeight::general(ls)?)
            }
            (None, None) => None,
        };
        let witness = match &self.witness {
            Some(w) => w
                .iter()
                .enumerate()
                .map(|(i, [re, im])| {
                    let f = format!("witness[{i}]");
                    Ok(GaussQ::new(parse_rat(&f, re)?, parse_rat(&f, im)?))
                })
                .collect::<Result<Vec<_>>>()?,
            None => {
                let mut w = vec![GaussQ::new(Rat::from_integer(0.into()), Rat::from_integer(0.into())); self.n + 1];
                if matches!(self.kind, DomainKind::RigidModel | DomainKind::Siegel) {
                    w[self.n] = GaussQ::new(Rat::from_integer((-1).into()), Rat::from_integer(0.into()));
                }
                w
            }
        };
        DomainSpec::new(&self.name, defining, lambda, self.kind, witness)
    }

    pub fn from_spec(d: &DomainSpec) -> Self {
        DomainFile {
            name: d.name.clone(),
            n: d.n,
            defining: d.defining.to_literal(),
            lambda: d.lambda.as_ref().map(|l| l.lambdas().iter().map(|x| x.to_string()).collect()),
            multitype: d.lambda.as_ref().and_then(|l| l.multitype().map(<[u32]>::to_vec)),
            kind: d.kind,
            witness: Some(d.witness.iter().map(|g| [g.re.to_string(), g.im.to_string()]).collect()),
        }
    }
}

fn schema(e: serde_json::Error) -> Error {
    Error::Schema { field: "document".into(), detail: e.to_string() }
}

pub fn domain_from_json(src: &str) -> Result<DomainSpec> {
    serde_json::from_str::<DomainFile>(src).map_err(schema)?.into_spec()
}

pub fn sequence_from_json(src: &str) -> Result<ApproachSequence> {
    ApproachSequence::from_file(&serde_json::from_str::<SequenceFile>(src).map_err(schema)?)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema { field: "path".into(), detail: format!("{}: {e}", path.display()) })
}

/// A domain spec file or sequence file, told apart by its keys.
pub fn load_spec(path: &Path) -> Result<LoadedSpec> {
    let src = read(path)?;
    let v: Value = serde_json::from_str(&src).map_err(schema)?;
    if v.get("defining").is_some() {
        Ok(LoadedSpec::Domain(domain_from_json(&src)?))
    } else if v.get("alpha").is_some() {
        Ok(LoadedSpec::Sequence(sequence_from_json(&src)?))
    } else {
        Err(Error::Schema { field: "document".into(), detail: "neither a domain (defining) nor a sequence (alpha)".into() })
    }
}

/// Catalog id or path to a domain file.
pub fn resolve_domain(arg: &str) -> Result<DomainSpec> {
    if let Ok(d) = catalog(arg) {
        return Ok(d);
    }
    match load_spec(Path::new(arg))? {
        LoadedSpec::Domain(d) => Ok(d),
        LoadedSpec::Sequence(_) => Err(Error::Schema { field: "domain".into(), detail: format!("{arg} is a sequence file") }),
    }
}

/// Catalog sequence id or path to a sequence file.
pub fn resolve_sequence(arg: &str) -> Result<ApproachSequence> {
    if let Ok(s) = catalog_sequence(arg) {
        return Ok(s);
    }
    match load_spec(Path::new(arg))? {
        LoadedSpec::Sequence(s) => Ok(s),
        LoadedSpec::Domain(_) => Err(Error::Schema { field: "seq".into(), detail: format!("{arg} is a domain file") }),
    }
}

/// SHA-256 over the serialized catalog domains and sequences.
pub fn catalog_hash() -> String {
    let mut h = Sha256::new();
    for id in CATALOG_IDS {
        let d = catalog(id).expect("catalog entry");
        h.update(serde_json::to_vec(&DomainFile::from_spec(&d)).expect("serializable"));
    }
    for id in SEQUENCE_IDS {
        let s = catalog_sequence(id).expect("catalog sequence");
        h.update(serde_json::to_vec(&s.to_file()).expect("serializable"));
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_round_trip() {
        for id in CATALOG_IDS {
            let d = catalog(id).unwrap();
            let json = serde_json::to_string(&DomainFile::from_spec(&d)).unwrap();
            let back = domain_from_json(&json).unwrap();
            assert_eq!(back.defining, d.defining);
            assert_eq!(back.lambda, d.lambda);
        }
    }

    #[test]
    fn increasing_weights_rejected() {
        let src = r#"{"name":"bad","n":2,"kind":"rigid-model","lambda":["1/6","1/4"],
            "defining":[{"c":["1","0"],"z":[0,0],"zb":[0,0],"u":1}]}"#;
        assert!(matches!(domain_from_json(src), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn unknown_field_is_schema_error() {
        let src = r#"{"name":"x","n":1,"kind":"generic","defining":[],"extra":1}"#;
        assert!(matches!(domain_from_json(src), Err(Error::Schema { .. })));
    }

    #[test]
    fn sequence_file_loads() {
        let dir = std::env::temp_dir().join(format!("squeezelab-spec-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("ex41.json");
        let src = r#"{"domain_id":"e123","target":["0","0","0"],"alpha":["j^(-1/4)","j^(-1/6)"],"beta":"-2*j^(-1) - j^(-2)"}"#;
        std::fs::write(&path, src).unwrap();
        match load_spec(&path).unwrap() {
            LoadedSpec::Sequence(s) => {
                assert_eq!(s, ApproachSequence { name: "sequence".into(), ..catalog_sequence("ex-4-1").unwrap() });
                assert!(s.target.iter().all(|t| t.re == Rat::from_integer(0.into()) && t.im == Rat::from_integer(0.into())));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(resolve_domain("e123").unwrap().name, "e123");
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn hash_is_stable() {
        assert_eq!(catalog_hash(), catalog_hash());
        assert_eq!(catalog_hash().len(), 64);
    }
}
