//! Conjugacy classes, normal subgroups, quotients, Sylow and Fitting-type
//! subgroups, nilpotent subgroup enumeration and central products.

mod central;
mod classes;
mod fitting;
mod nilpotent;
mod normal;
mod quotient;

pub use central::{central_product, CentralProduct, CentralProductSpec};
pub use classes::{conjugacy_classes, ClassData};
pub use fitting::{
    center, components, derived_subgroup, fitting, generalized_fitting, is_nilpotent, is_perfect, is_quasisimple,
    is_solvable, layer, o_p, p_part, prime_divisors, sylow_subgroup,
};
pub use nilpotent::{
    is_locally_maximal, max_nilpotent_order, maximal_nilpotent_classes, nilpotent_subgroup_classes, p_subgroup_classes,
    NilpotentSearch,
};
pub use normal::{is_normal, normal_subgroups, NormalLattice};
pub use quotient::{quotient, QuotientGroup};
