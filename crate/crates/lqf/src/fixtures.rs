//! Machine proofs of the corollary library with concrete terms, plus a
//! mutation generator used to validate that the checker pinpoints the
//! first broken step.

use lqf_core::calculus::{
    check_proof, expand_rule, fragment_to_proof, DerivedRule, Justification, Proof, ProofStep,
};
use lqf_core::term::{parse, Term};

pub struct CorollaryFixture {
    pub name: String,
    pub proof: Proof,
}

fn t(s: &str) -> Term {
    parse(s).expect("fixture term")
}

/// Primitive proofs of the implemented corollaries, instantiated at
/// concrete terms a, b, c.
pub fn corollary_fixtures() -> Vec<CorollaryFixture> {
    let mut out = Vec::new();
    let mut push = |rule: u8, theory: Vec<Term>, params: Vec<Term>| {
        let frag = expand_rule(DerivedRule(rule), &theory, &params).expect("fixture expansion");
        let proof = fragment_to_proof(theory.clone(), &theory, frag);
        out.push(CorollaryFixture { name: format!("COR-{rule}"), proof });
    };
    push(1, vec![], vec![t("a")]);
    push(2, vec![], vec![t("a")]);
    push(3, vec![t("R(a,b)")], vec![]);
    push(4, vec![t("R(a,b)"), t("R(b,c)")], vec![]);
    push(5, vec![t("R(a,b)")], vec![]);
    push(6, vec![t("R(a,b)"), t("a & c")], vec![]);
    push(8, vec![t("R(a,b)")], vec![t("c")]);
    push(9, vec![t("R(a,b)")], vec![t("c")]);
    push(10, vec![t("R(a,b)")], vec![t("c")]);
    push(11, vec![t("R(a,b)")], vec![t("c")]);
    out
}

/// The five-step theorem-of-one proof: excluded middle by macro, then the
/// axiom bridge and two syllogisms.
pub fn five_step_one_proof() -> Proof {
    let a = t("a");
    let lem = Term::join(a.clone(), Term::neg(a.clone()));
    Proof {
        theory: vec![],
        steps: vec![
            ProofStep {
                term: lem.clone(),
                just: Justification::Macro {
                    rule: DerivedRule(1),
                    inputs: vec![],
                    params: vec![a],
                },
            },
            ProofStep {
                term: Term::r(lem.clone(), Term::One),
                just: Justification::Axiom { id: lqf_core::calculus::AxiomId::A0a },
            },
            ProofStep {
                term: Term::join(
                    Term::neg(Term::r(lem.clone(), Term::One)),
                    Term::join(Term::neg(lem.clone()), Term::One),
                ),
                just: Justification::Axiom { id: lqf_core::calculus::AxiomId::A(13) },
            },
            ProofStep {
                term: Term::join(Term::neg(lem), Term::One),
                just: Justification::Ds { minor: 1, major: 2 },
            },
            ProofStep { term: Term::One, just: Justification::Ds { minor: 0, major: 3 } },
        ],
    }
}

pub struct MutationCase {
    pub description: String,
    pub proof: Proof,
    /// Index at which the checker must flag the first bad step.
    pub expected_bad_index: usize,
}

/// Three single-step corruptions per fixture: a damaged axiom-instance
/// term, a retargeted syllogism reference, and a deleted step.
pub fn mutations_of(name: &str, proof: &Proof) -> Vec<MutationCase> {
    let mut cases = Vec::new();

    // Damage the last axiom-justified step's term.
    if let Some(k) = proof
        .steps
        .iter()
        .rposition(|s| matches!(s.just, Justification::Axiom { .. }))
    {
        let mut p = proof.clone();
        p.steps[k].term = Term::meet(p.steps[k].term.clone(), Term::One);
        cases.push(MutationCase {
            description: format!("{name}: axiom term altered at step {k}"),
            proof: p,
            expected_bad_index: k,
        });
    }

    // Point the last syllogism's minor premise at its own major premise.
    if let Some(k) = proof
        .steps
        .iter()
        .rposition(|s| matches!(s.just, Justification::Ds { .. }))
    {
        let mut p = proof.clone();
        if let Justification::Ds { minor, major } = &mut p.steps[k].just {
            *minor = *major;
        }
        cases.push(MutationCase {
            description: format!("{name}: syllogism reference retargeted at step {k}"),
            proof: p,
            expected_bad_index: k,
        });
    }

    // Delete the step immediately before the final one; the final step's
    // justification now resolves against shifted positions.
    if proof.steps.len() >= 2 {
        let mut p = proof.clone();
        let k = p.steps.len() - 2;
        p.steps.remove(k);
        cases.push(MutationCase {
            description: format!("{name}: step {k} deleted"),
            proof: p,
            expected_bad_index: k,
        });
    }

    debug_assert!(cases.iter().all(|c| {
        let v = check_proof(&c.proof, true);
        !v.ok
    }));
    cases
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_check_strictly() {
        for f in corollary_fixtures() {
            let v = check_proof(&f.proof, true);
            assert!(v.ok, "{}: {v}", f.name);
        }
        assert!(check_proof(&five_step_one_proof(), true).ok);
    }

    #[test]
    fn fixture_conclusions() {
        let fixtures = corollary_fixtures();
        let last = |name: &str| {
            fixtures
                .iter()
                .find(|f| f.name == name)
                .unwrap()
                .proof
                .steps
                .last()
                .unwrap()
                .term
                .clone()
        };
        assert_eq!(last("COR-1"), t("a | ~a"));
        assert_eq!(last("COR-2"), t("1"));
        assert_eq!(last("COR-3"), t("R(b,a)"));
        assert_eq!(last("COR-4"), t("R(a,c)"));
        assert_eq!(last("COR-5"), t("R(~a,~b)"));
        assert_eq!(last("COR-6"), t("b & c"));
        assert_eq!(last("COR-8"), t("R(w(c,a), w(c,b))"));
        assert_eq!(last("COR-9"), t("R(w(a,c), w(b,c))"));
        assert_eq!(last("COR-10"), t("R(w*(c,a), w*(c,b))"));
        assert_eq!(last("COR-11"), t("R(w*(a,c), w*(b,c))"));
    }

    #[test]
    fn mutations_fail_at_expected_index() {
        let mut total = 0;
        for f in corollary_fixtures() {
            for case in mutations_of(&f.name, &f.proof) {
                let v = check_proof(&case.proof, true);
                assert!(!v.ok, "{}", case.description);
                assert_eq!(
                    v.first_bad_step.unwrap().0,
                    case.expected_bad_index,
                    "{}",
                    case.description
                );
                total += 1;
            }
        }
        assert!(total >= 20);
    }
}
