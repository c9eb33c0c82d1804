//! Cross-module properties of the decomposition on small groups.

use nipreg_core::decompose::{decompose, CheckStatus, DecomposeOptions, Mode, PDescriptor};
use nipreg_core::group::{build_group, DEFAULT_ORDER_CAP};
use nipreg_core::subset::product_set;
use nipreg_core::{Epsilon, GroupSubset, Rational};
use proptest::prelude::*;

const SPECS: [&str; 6] = ["Z8", "Z12", "Z2^4", "Z2xZ6", "D4", "D6"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bound_checks_hold(spec in 0..SPECS.len(), bits in 1u32.., eps in 1i64..10) {
        let g = build_group(SPECS[spec], DEFAULT_ORDER_CAP).unwrap();
        let a = GroupSubset::from_elements(&g, (0..g.order()).filter(|&i| bits >> i & 1 == 1)).unwrap();
        prop_assume!(!a.is_empty());
        let d = decompose(&a, Epsilon::new(Rational::new(eps, 10)).unwrap(), &DecomposeOptions::new(Mode::Subgroup)).unwrap();
        let failed: Vec<_> = d.bound_checks.iter().filter(|c| c.status == CheckStatus::Fail).map(|c| c.name).collect();
        prop_assert!(failed.is_empty(), "{:?}", failed);

        // D is F P, and the reported error is |A △ D| / |A|
        let dset = d.d.clone();
        if let PDescriptor::Subgroup { elements } = &d.p_descriptor {
            let p = GroupSubset::from_elements(&g, elements.iter().copied()).unwrap();
            prop_assert!(p.is_subgroup());
            let f = GroupSubset::from_elements(&g, d.f.iter().copied()).unwrap();
            prop_assert_eq!(&product_set(&f, &p).unwrap(), &dset);
        }
        let diff = a.symmetric_difference_size(&dset).unwrap();
        prop_assert_eq!(d.structure_err, Rational::new(diff as i64, a.size() as i64));
    }
}

#[test]
fn subgroup_is_recovered_exactly() {
    let g = build_group("Z2^4", DEFAULT_ORDER_CAP).unwrap();
    // two cosets of <1, 2>
    let a = GroupSubset::from_elements(&g, [0, 1, 2, 3, 8, 9, 10, 11]).unwrap();
    let d = decompose(&a, Epsilon::new(Rational::new(1, 2)).unwrap(), &DecomposeOptions::new(Mode::Subgroup)).unwrap();
    assert_eq!(d.structure_err, Rational::from_integer(0));
    assert!(d.all_pass());
}
