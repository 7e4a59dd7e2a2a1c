mod common;

use common::{oracle_mismatches, small_corpus, Oracle};
use strucalg::constructions::{heisenberg, truncated_poly};
use strucalg::invariants::annihilator_full;
use strucalg::FieldSpec;

#[test]
fn corpus_agrees_with_brute_force() {
    let mut failures = Vec::new();
    for (name, c) in small_corpus() {
        let size = c.algebra.field().characteristic().pow(c.algebra.dim() as u32);
        assert!(size <= 81, "{name} has {size} elements");
        for m in oracle_mismatches(&c) {
            failures.push(format!("{name}: {m}"));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn oracle_sanity() {
    let gf3 = FieldSpec::prime(3).unwrap();
    let h = heisenberg(&gf3, 1).unwrap().algebra;
    let o = Oracle::new(&h);
    assert_eq!(o.elements.len(), 27);
    assert_eq!(o.annihilator().len(), 3);
    assert!(o.jacobi() && o.alternating() && o.two_step() && !o.commutative());
    assert_eq!(o.nilpotency_index(), Some(3));
    let tp = truncated_poly(&gf3, 3).unwrap().algebra;
    let o = Oracle::new(&tp);
    assert_eq!(o.unit(), Some(vec![1, 0, 0]));
    assert_eq!(o.local().map(|m| m.len()), Some(9));
    assert_eq!(annihilator_full(&tp).dim(), 0);
}
