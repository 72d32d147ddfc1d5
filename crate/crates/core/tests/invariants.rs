mod common;

use chi_lie::catalog;
use chi_lie::chi_construct::{chi_presentation, compute_chi, default_max_class};
use chi_lie::homology::{h2_ce, stem_extension};
use chi_lie::nilpotent_quotient::{class_quotient, class_quotient_via_free, relators_hold};
use chi_lie::verify::Status;
use chi_lie::LieAlgebra;
use common::*;

#[test]
fn ideal_chain_on_catalog() {
    for e in catalog::standard_entries() {
        let c = chi_of(&e.build().unwrap());
        let name = e.label();
        assert!(
            c.l.contains_subspace(&c.w) && c.w.contains_subspace(&c.r),
            "{name}"
        );
        for s in [&c.l, &c.d, &c.w, &c.r] {
            assert!(c.chi.is_ideal(s), "{name}");
        }
        assert!(
            c.alpha.is_hom() && c.beta.is_hom() && c.rho.is_hom(),
            "{name}"
        );
        // R was already an ideal before closing it up
        assert_eq!(c.chi.ideal_closure(&c.r.basis_vectors()), c.r, "{name}");
    }
}

#[test]
fn quotient_engine_matches_free_route_on_small_chi() {
    for g in [
        LieAlgebra::abelian(2),
        catalog::build("heisenberg", &[3]).unwrap(),
    ] {
        let p = chi_presentation(&g).unwrap();
        for c in 1..=3 {
            let fast = class_quotient(&p, c).unwrap();
            let slow = class_quotient_via_free(&p, c, 20_000).unwrap();
            assert_eq!(
                fast.algebra.dim(),
                slow.algebra.dim(),
                "{} class {c}",
                g.name()
            );
            assert!(relators_hold(&p, &fast).unwrap());
        }
    }
}

#[test]
fn stem_extensions_on_nilpotent_entries() {
    for e in nilpotent_entries() {
        let g = e.build().unwrap();
        let s = stem_extension(&g).unwrap();
        assert_eq!(s.h.dim(), g.dim() + h2_ce(&g).dim, "{}", e.label());
        assert_eq!(s.projection.kernel(), s.z);
        assert!(s.projection.is_hom());
        if s.h.dim() <= 40 {
            assert!(s.h.center().contains_subspace(&s.z) && s.h.derived().contains_subspace(&s.z));
        }
    }
}

#[test]
fn corrupted_constant_flips_c2_with_witness_pair() {
    let g = catalog::build("heisenberg", &[3]).unwrap();
    let c = compute_chi(&g, default_max_class(&g).unwrap()).unwrap();
    let r = verify(&corrupt_chi_constant(&c));
    let c2 = r.check("C2").unwrap();
    assert_eq!(c2.status, Status::Fail);
    assert!(c2.witness.as_ref().unwrap()["pair"].is_array());
}

#[test]
fn flipped_relator_breaks_polarization() {
    let c = chi_with_flipped_relator(&LieAlgebra::abelian(3), 4);
    let r = verify(&c);
    assert_eq!(r.status("C8"), Some(Status::Fail));
    assert!(r.check("C8").unwrap().witness.is_some());
}

#[test]
fn corrupted_rho_entry_is_detected() {
    for e in ["paper_example_1", "sl2"] {
        let c = chi_of(&catalog::build(e, &[]).unwrap());
        let r = verify(&corrupt_rho_entry(&c));
        assert!(!r.all_passed, "{e}");
        assert!(r
            .failed()
            .iter()
            .all(|id| r.check(id).unwrap().witness.is_some()));
    }
}

#[test]
fn dimension_bound_is_tight_exactly_when_r_vanishes() {
    for e in catalog::standard_entries() {
        let g = e.build().unwrap();
        let c = chi_of(&g);
        let bound = 2 * g.dim() + g.derived().dim() + h2_ce(&g).dim;
        assert_eq!(c.dim() - bound, c.r.dim(), "{}", e.label());
    }
}
