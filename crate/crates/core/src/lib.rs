pub(crate) mod algebraic;
pub mod bipoly;
pub mod certify;
pub mod cone;
pub mod error;
pub mod euler;
pub mod lattice;
pub mod newton;
pub mod poly;
pub mod polytope;
pub mod report;
pub mod roots;
pub mod torus;
pub mod upoly;
pub mod value;

pub use error::{Error, Result};

pub use certify::{assemble_kf, common_edges_count, e_function, inclusion_report, Analysis, CandidateValue, CertVerdict, Certificate, HypothesisCheck, KfAssembly, Options, Origin};
pub use cone::Cone;
pub use euler::{chi_affine_curve_fiber, euler_jump, pick_generic_value, FiberTopology, JumpReport};
pub use lattice::IntVec;
pub use newton::{atypical_faces, bad_faces, is_convenient, newton_polyhedron_at_infinity, newton_polytope, FaceClassification, NewtonData};
pub use poly::{parse_polynomial, Mode, Rational, SparsePoly};
pub use polytope::{Face, FaceId, Fan, LatticePolytope};
pub use torus::{affine_critical_values, critical_values_torus, nondegenerate_at_infinity, restrict_to_face_torus, CriticalValueSet, NondegeneracyReport, Outcome, Verdict, Witness};
pub use value::{Settings, Status, Tolerances, Value};
