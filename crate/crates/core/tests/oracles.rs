//! Nilpotent subgroups, the Fitting subgroup and conjugacy classes against
//! brute force.

mod common;

use std::sync::Arc;

use charind::catalog::{build, catalog_list, Filter};
use charind::PermGroup;

use common::brute::{check_classes, check_fitting, check_nilpotent, nilpotent_subgroups, Table, ORACLE_MAX_ORDER};

fn small_groups() -> Vec<(String, Arc<PermGroup>)> {
    catalog_list(Filter::Default)
        .into_iter()
        .map(|n| (n.clone(), build(&n).unwrap().group.clone()))
        .filter(|(_, g)| g.order() <= ORACLE_MAX_ORDER)
        .collect()
}

#[test]
fn nilpotent_search_and_fitting_match_brute_force() {
    for (name, g) in small_groups() {
        let t = Table::new(&g);
        let subs = nilpotent_subgroups(&t, g.order());
        check_nilpotent(&name, &g, &t, &subs).unwrap();
        check_fitting(&name, &g, &t, &subs).unwrap();
    }
}

#[test]
fn classes_are_conjugation_orbits() {
    for name in catalog_list(Filter::Default) {
        let g = build(&name).unwrap().group.clone();
        check_classes(&name, &g).unwrap();
    }
}
