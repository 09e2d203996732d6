//! Braid closures, their band surfaces and the link family `L_{l,m,k}`.

mod braid;
mod closure;
mod diagram;
mod family;
mod seifert;

pub use braid::BraidWord;
pub use closure::{euler_and_genus, linking_number, BlockSpan, ClosureDiagram, Crossing};
pub use diagram::{bigons, diagram_edges, is_connected, is_prime, menasco_check, twist_regions, MenascoCertificate, TwistRegions};
pub use family::{
    boundary_framing, build_llmk, family_record, stallings_block_framings, surgery_description, BlockFraming,
    FamilyRecord, SurgeryRecord, BLACK, BLUE,
};
pub use seifert::{alexander_polynomial, seifert_matrix, Alexander, BandCycle, SeifertData};
