//! Coset orbits, certificates for one-sided quasi-normalizers, and the
//! conditions that classify `L(H) ⊆ L(G)`.

mod action;
mod certificate;
mod conditions;
mod diagnosis;
mod membership;
mod orbit;

pub use action::Side;
pub use certificate::{compose_certificates, product_compose, product_inclusion, QnCertificate, TailClause};
pub use conditions::{
    check_c1, check_c2, check_c3, exact_c1, exact_c3, is_abelian, is_normal, normalizer_test, subgroup_ball, C1Result,
    C2Result, C3Result, Normality,
};
pub use diagnosis::{
    diagnose_inclusion, BallEntry, C1Summary, C2Summary, C3Summary, DiagnosisConfig, DiagnosisFlags, Evidence,
    EvidenceTier, InclusionReport, ProbeReport,
};
pub use membership::{exact_qn1, h1_membership, qn1_membership, H1Verdict, MembershipVerdict, RefutationReason, Status};
pub use orbit::{orbit_bfs, CosetOrbit};
