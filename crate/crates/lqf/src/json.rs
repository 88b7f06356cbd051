//! On-disk JSON formats: lattices (optionally expanded with w/w* tables),
//! proofs, and exact-rational matrices as `p/q` strings.

use anyhow::{anyhow, bail, Result};
use lqf_core::calculus::{AxiomId, DerivedRule, Justification, Proof, ProofStep};
use lqf_core::matrix::{Rational, RationalMatrix};
use lqf_core::oml::{FiniteOml, OmlError, RawOml};
use lqf_core::term::{parse, ExpandedStructure};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeFile {
    pub elements: Vec<String>,
    pub leq: Vec<Vec<bool>>,
    pub neg: Vec<usize>,
    pub bottom: usize,
    pub top: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wstar: Option<Vec<Vec<usize>>>,
}

impl LatticeFile {
    pub fn to_raw(&self) -> RawOml {
        RawOml {
            names: self.elements.clone(),
            leq: self.leq.clone(),
            neg: self.neg.clone(),
            bottom: self.bottom,
            top: self.top,
        }
    }

    pub fn to_lattice(&self) -> Result<FiniteOml, OmlError> {
        FiniteOml::verify(&self.to_raw())
    }

    pub fn has_tables(&self) -> bool {
        self.w.is_some() && self.wstar.is_some()
    }

    pub fn to_expanded(&self) -> Result<ExpandedStructure> {
        let base = self.to_lattice().map_err(|e| anyhow!("{e}"))?;
        let (w, wstar) = match (&self.w, &self.wstar) {
            (Some(w), Some(ws)) => (w, ws),
            _ => bail!("expanded structure requires both \"w\" and \"wstar\" tables"),
        };
        let n = base.len();
        let flatten = |t: &Vec<Vec<usize>>, what: &str| -> Result<Vec<usize>> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                bail!("{what} table must be {n}x{n}");
            }
            Ok(t.iter().flatten().copied().collect())
        };
        let w = flatten(w, "w")?;
        let wstar = flatten(wstar, "wstar")?;
        ExpandedStructure::new(base, w, wstar).map_err(|e| anyhow!("{e}"))
    }

    pub fn from_lattice(l: &FiniteOml) -> LatticeFile {
        let raw = l.raw();
        LatticeFile {
            elements: raw.names,
            leq: raw.leq,
            neg: raw.neg,
            bottom: raw.bottom,
            top: raw.top,
            w: None,
            wstar: None,
        }
    }

    pub fn from_expanded(s: &ExpandedStructure) -> LatticeFile {
        let mut file = Self::from_lattice(s.base());
        let n = s.base().len();
        let unflatten = |t: &[usize]| (0..n).map(|z| t[z * n..(z + 1) * n].to_vec()).collect();
        file.w = Some(unflatten(s.w_table()));
        file.wstar = Some(unflatten(s.wstar_table()));
        file
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProofFile {
    #[serde(default)]
    pub theory: Vec<String>,
    pub steps: Vec<StepFile>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepFile {
    pub term: String,
    pub just: JustFile,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum JustFile {
    Axiom {
        id: String,
    },
    Hyp {
        index: usize,
    },
    Ds {
        minor: usize,
        major: usize,
    },
    N {
        from: usize,
    },
    Macro {
        rule: String,
        #[serde(default)]
        inputs: Vec<usize>,
        #[serde(default)]
        params: Vec<String>,
    },
    Dt {
        hypothesis: String,
        subproof: Box<ProofFile>,
    },
}

impl ProofFile {
    pub fn to_proof(&self) -> Result<Proof> {
        let theory = self
            .theory
            .iter()
            .map(|t| parse(t).map_err(|e| anyhow!("theory term {t:?}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        let steps = self
            .steps
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let term =
                    parse(&s.term).map_err(|e| anyhow!("step {i} term {:?}: {e}", s.term))?;
                let just = match &s.just {
                    JustFile::Axiom { id } => Justification::Axiom {
                        id: AxiomId::parse_id(id)
                            .ok_or_else(|| anyhow!("step {i}: unknown axiom id {id:?}"))?,
                    },
                    JustFile::Hyp { index } => Justification::Hyp { index: *index },
                    JustFile::Ds { minor, major } => {
                        Justification::Ds { minor: *minor, major: *major }
                    }
                    JustFile::N { from } => Justification::N { from: *from },
                    JustFile::Macro { rule, inputs, params } => Justification::Macro {
                        rule: DerivedRule::parse_id(rule)
                            .ok_or_else(|| anyhow!("step {i}: unknown rule {rule:?}"))?,
                        inputs: inputs.clone(),
                        params: params
                            .iter()
                            .map(|p| parse(p).map_err(|e| anyhow!("step {i} param {p:?}: {e}")))
                            .collect::<Result<Vec<_>>>()?,
                    },
                    JustFile::Dt { hypothesis, subproof } => Justification::Dt {
                        hypothesis: parse(hypothesis)
                            .map_err(|e| anyhow!("step {i} hypothesis: {e}"))?,
                        subproof: Box::new(subproof.to_proof()?),
                    },
                };
                Ok(ProofStep { term, just })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Proof { theory, steps })
    }

    pub fn from_proof(proof: &Proof) -> ProofFile {
        let theory = proof.theory.iter().map(|t| t.to_string()).collect();
        let steps = proof
            .steps
            .iter()
            .map(|s| StepFile {
                term: s.term.to_string(),
                just: match &s.just {
                    Justification::Axiom { id } => JustFile::Axiom { id: id.to_string() },
                    Justification::Hyp { index } => JustFile::Hyp { index: *index },
                    Justification::Ds { minor, major } => {
                        JustFile::Ds { minor: *minor, major: *major }
                    }
                    Justification::N { from } => JustFile::N { from: *from },
                    Justification::Macro { rule, inputs, params } => JustFile::Macro {
                        rule: rule.to_string(),
                        inputs: inputs.clone(),
                        params: params.iter().map(|p| p.to_string()).collect(),
                    },
                    Justification::Dt { hypothesis, subproof } => JustFile::Dt {
                        hypothesis: hypothesis.to_string(),
                        subproof: Box::new(ProofFile::from_proof(subproof)),
                    },
                },
            })
            .collect();
        ProofFile { theory, steps }
    }
}

/// Matrices are row-major arrays of `p/q` strings.
pub type MatrixFile = Vec<Vec<String>>;

pub fn matrix_from_file(file: &MatrixFile) -> Result<RationalMatrix> {
    let rows = file
        .iter()
        .enumerate()
        .map(|(r, row)| {
            row.iter()
                .map(|s| {
                    s.trim()
                        .parse::<Rational>()
                        .map_err(|e| anyhow!("row {r}: bad rational {s:?}: {e}"))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    RationalMatrix::from_rows(rows).map_err(|e| anyhow!("{e}"))
}

pub fn matrix_to_file(m: &RationalMatrix) -> MatrixFile {
    m.to_strings()
}

#[cfg(test)]
mod tests {
    use super::*;
    use lqf_core::calculus::check_proof;
    use lqf_core::oml::build;

    #[test]
    fn lattice_round_trip() {
        let l = build::mo(2);
        let file = LatticeFile::from_lattice(&l);
        let text = serde_json::to_string(&file).unwrap();
        let back: LatticeFile = serde_json::from_str(&text).unwrap();
        let l2 = back.to_lattice().unwrap();
        assert_eq!(l2.raw(), l.raw());
        assert!(!text.contains("wstar"));
    }

    #[test]
    fn expanded_round_trip() {
        let l = build::boolean(1);
        let s = ExpandedStructure::new(l, vec![0, 1, 1, 1], vec![0, 0, 0, 1]).unwrap();
        let file = LatticeFile::from_expanded(&s);
        let text = serde_json::to_string(&file).unwrap();
        let back: LatticeFile = serde_json::from_str(&text).unwrap();
        let s2 = back.to_expanded().unwrap();
        assert_eq!(s2.w_table(), s.w_table());
        assert_eq!(s2.wstar_table(), s.wstar_table());
    }

    #[test]
    fn proof_round_trip() {
        let text = r#"{
            "theory": ["R(a,b)"],
            "steps": [
                {"term": "R(a,b)", "just": {"kind": "hyp", "index": 0}},
                {"term": "R(b,a)", "just": {"kind": "macro", "rule": "COR-3", "inputs": [0]}}
            ]
        }"#;
        let file: ProofFile = serde_json::from_str(text).unwrap();
        let proof = file.to_proof().unwrap();
        assert!(check_proof(&proof, true).ok);
        let back = ProofFile::from_proof(&proof);
        let proof2 = back.to_proof().unwrap();
        assert_eq!(proof, proof2);
    }

    #[test]
    fn matrix_parsing() {
        let file: MatrixFile = serde_json::from_str(r#"[["1/2", "0"], ["-3", "2/4"]]"#).unwrap();
        let m = matrix_from_file(&file).unwrap();
        assert_eq!(m.at(0, 0), &lqf_core::matrix::rat(1, 2));
        assert_eq!(m.at(1, 1), &lqf_core::matrix::rat(1, 2));
        assert_eq!(m.at(1, 0), &lqf_core::matrix::rat(-3, 1));

        let bad: MatrixFile = vec![vec!["x".to_string()]];
        assert!(matrix_from_file(&bad).is_err());
    }
}
