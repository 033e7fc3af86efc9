//! The Eilenberg-Zilber machinery: s-paths and their classification, prism
//! filling sequences, the EZ vector field and (twisted) reduction, the
//! classical AW/EML/SHI formulas, and naturality checks.

pub mod classical;
pub mod field;
pub mod lens;
pub mod naturality;
pub mod spath;

pub use classical::{aw, aw_cell, eml, eml_cell, shi, shi_cell, shuffles};
pub use field::{
    ez_classify_cell, ez_reduction, ez_vector_field, tensor_cell, tensor_complex, tensor_key,
    tensor_morphism, tensor_of_reductions, tensor_parts, twisted_ez_reduction,
};
pub use naturality::{naturality_check, NaturalityReport, SimplicialMorphism};
pub use spath::{
    all_interior_paths, config_from_spath, ez_classify, filling_sequence, interior_faces,
    interior_path_count, is_valid_filling_sequence, last_simplex, prism_lyapunov,
    spath_from_config, DegeneracyConfiguration, EzClass, SPath,
};
