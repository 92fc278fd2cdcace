//! Factor-to-role mapping and contributor role profiles.

pub mod assign;
pub mod profile;
pub mod reference;
pub mod similarity;

pub use assign::{assign_roles, merge_max, FactorAssignment, RoleFactorModel};
pub use profile::{
    developer_profile, render_radar_svg, strategy_role_distribution, ContributorClass, DeveloperRoleProfile,
    ProfileBasis,
};
pub use reference::{RoleReferenceTable, DEFAULT_ROLES, OTHERS_ROLE};
pub use similarity::kh_similarity;
