//! Theorem-level pipelines: the generalized lower bound certificate, the
//! reconstruction of stacked balls from their boundaries, shelling search
//! and an exhaustive uniqueness oracle.

mod shelling;
mod uniqueness;

pub use shelling::{is_shellable, ShellingCertificate};
pub use uniqueness::{uniqueness_probe, UniquenessLimits, MAX_PROBE_VERTICES};

use serde::Serialize;

use crate::algebra::{wlp_check, WlpReport};
use crate::complex::{Face, HVector, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{
    boundary_complex, interior_faces, is_homology_ball, is_homology_sphere, BallSphereVerdict,
};
use crate::linalg::FieldSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Refuted,
    PreconditionFailed,
}

impl Verdict {
    /// Process exit code: 0, 1 and 2 respectively.
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::PreconditionFailed => 2,
        }
    }
}

/// Which statement a GLBC run certifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlbcMode {
    /// `r <= d/2`: `h_{r-1} = h_r` implies `Δ(d-r)` is the `(r-1)`-stacked
    /// ball bounded by `Δ`.
    Full,
    /// `r = (d+1)/2`: no h-vector hypothesis; only tests whether `Δ(d-r)` is an
    /// `(r-1)`-stacked ball bounded by `Δ`, the only candidate for one.
    ReconstructionOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailureWitness {
    pub check: String,
    pub face: Option<Face>,
    pub detail: String,
}

fn witness(check: &str, face: Option<Face>, detail: impl Into<String>) -> FailureWitness {
    FailureWitness { check: check.into(), face, detail: detail.into() }
}

#[derive(Clone, Copy, Debug)]
pub struct GlbcOptions {
    /// Verify that the input is a homology sphere first.
    pub check_sphere: bool,
    /// Also test the weak Lefschetz property with this seed.
    pub wlp_seed: Option<u64>,
}

impl Default for GlbcOptions {
    fn default() -> Self {
        GlbcOptions { check_sphere: true, wlp_seed: None }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GlbcReport {
    pub d: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub mode: GlbcMode,
    pub h_vector: HVector,
    pub sphere: Option<BallSphereVerdict>,
    /// `h_{r-1} = h_r` (full mode only).
    pub h_equality: Option<bool>,
    pub delta_facets: Option<usize>,
    /// `Δ(r-1) = Δ(d-r)`.
    pub truncations_agree: Option<bool>,
    pub ball: Option<BallSphereVerdict>,
    pub boundary_matches: Option<bool>,
    pub stackedness_index: Option<usize>,
    pub wlp: Option<WlpReport>,
    pub verdict: Verdict,
    pub witness: Option<FailureWitness>,
}

fn first_difference(a: &SimplicialComplex, b: &SimplicialComplex) -> Option<Face> {
    let mut diff: Vec<Face> = a
        .facets()
        .iter()
        .filter(|f| !b.contains(**f))
        .chain(b.facets().iter().filter(|f| !a.contains(**f)))
        .copied()
        .collect();
    diff.sort();
    diff.first().copied()
}

/// Certifies that `Δ(d-r)` is an `(r-1)`-stacked homology `d`-ball with
/// boundary `Δ`, for a homology `(d-1)`-sphere `Δ`.
///
/// With `r <= d/2` the run requires `h_{r-1} = h_r` (else the verdict is
/// precondition-failed) and a negative sub-check refutes the implication.
/// With `r = (d+1)/2` only the reconstruction is tested. A requested WLP
/// test that fails turns a negative outcome into precondition-failed.
pub fn glbc_verify(complex: &SimplicialComplex, r: usize, field: FieldSpec, opts: &GlbcOptions) -> Result<GlbcReport> {
    if !complex.is_pure() {
        return Err(Error::NotPure);
    }
    let dim = complex.dim();
    if dim < 0 {
        return Err(Error::InvalidParameter("the input has no vertices".into()));
    }
    let d = (dim + 1) as usize;
    if r < 1 || 2 * r > d + 1 {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= (d+1)/2, got r = {r} with d = {d}")));
    }
    let mode = if 2 * r <= d { GlbcMode::Full } else { GlbcMode::ReconstructionOnly };
    let h = complex.h_vector();
    let mut report = GlbcReport {
        d,
        r,
        field,
        mode,
        h_vector: h.clone(),
        sphere: None,
        h_equality: None,
        delta_facets: None,
        truncations_agree: None,
        ball: None,
        boundary_matches: None,
        stackedness_index: None,
        wlp: None,
        verdict: Verdict::PreconditionFailed,
        witness: None,
    };

    if opts.check_sphere {
        let sphere = is_homology_sphere(complex, field);
        let ok = sphere.is_sphere();
        let w = sphere.witness.clone();
        report.sphere = Some(sphere);
        if !ok {
            report.witness = Some(witness(
                "homology-sphere",
                w.as_ref().map(|w| w.face),
                format!("input is not a homology sphere over {field}"),
            ));
            return Ok(report);
        }
    }
    if mode == GlbcMode::Full {
        let eq = h.get(r - 1) == h.get(r);
        report.h_equality = Some(eq);
        if !eq {
            report.witness = Some(witness(
                "h-equality",
                None,
                format!("h_{} = {} but h_{r} = {}", r - 1, h.get(r - 1), h.get(r)),
            ));
            return Ok(report);
        }
    }
    if let Some(seed) = opts.wlp_seed {
        report.wlp = Some(wlp_check(complex, seed)?);
    }

    let failure = run_checks(complex, r, d, field, &mut report)?;
    report.verdict = match &failure {
        None => Verdict::Verified,
        Some(_) if report.wlp.as_ref().is_some_and(|w| !w.holds()) => Verdict::PreconditionFailed,
        Some(_) => Verdict::Refuted,
    };
    report.witness = failure;
    Ok(report)
}

fn run_checks(
    complex: &SimplicialComplex,
    r: usize,
    d: usize,
    field: FieldSpec,
    report: &mut GlbcReport,
) -> Result<Option<FailureWitness>> {
    let candidate = complex.delta_i(d - r);
    report.delta_facets = Some(candidate.facets().len());
    let low = complex.delta_i(r - 1);
    let agree = low == candidate;
    report.truncations_agree = Some(agree);
    if !agree {
        return Ok(Some(witness(
            "truncations-agree",
            first_difference(&low, &candidate),
            format!("Δ({}) differs from Δ({})", r - 1, d - r),
        )));
    }
    let ball = is_homology_ball(&candidate, field);
    let ball_ok = ball.is_ball() && ball.dim == d as isize;
    let ball_witness = ball.witness.clone();
    report.ball = Some(ball);
    if !ball_ok {
        return Ok(Some(witness(
            "homology-ball",
            ball_witness.map(|w| w.face),
            format!("Δ({}) is not a homology {d}-ball", d - r),
        )));
    }
    let boundary = boundary_complex(&candidate, field)?;
    let matches = boundary == *complex;
    report.boundary_matches = Some(matches);
    if !matches {
        return Ok(Some(witness(
            "boundary",
            first_difference(&boundary, complex),
            "the boundary of the ball differs from the input",
        )));
    }
    let interior = interior_faces(&candidate, field)?;
    let lowest = *interior.iter().min_by_key(|f| f.card()).expect("facets are interior");
    let index = d - lowest.dim() as usize;
    report.stackedness_index = Some(index);
    if index > r - 1 {
        return Ok(Some(witness(
            "stackedness",
            Some(lowest),
            format!("interior face of dimension {} makes the ball {index}-stacked", lowest.dim()),
        )));
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct ReconstructReport {
    pub d: usize,
    pub r: usize,
    pub field: FieldSpec,
    pub ball: BallSphereVerdict,
    pub stackedness_index: Option<usize>,
    pub boundary_facets: Option<usize>,
    /// `Δ(d-r) = B` for `Δ = ∂B`.
    pub reconstructed: Option<bool>,
    /// `h_{r-1}(∂B) = h_r(∂B)`, when `r <= d/2`.
    pub h_equality: Option<bool>,
    pub verdict: Verdict,
    pub witness: Option<FailureWitness>,
}

/// For an `(r-1)`-stacked homology `d`-ball `B`, checks `∂B(d-r) = B` and,
/// when `r <= d/2`, `h_{r-1}(∂B) = h_r(∂B)`.
pub fn reconstruct_check(ball: &SimplicialComplex, r: usize, field: FieldSpec) -> Result<ReconstructReport> {
    if !ball.is_pure() {
        return Err(Error::NotPure);
    }
    let dim = ball.dim();
    if dim < 1 {
        return Err(Error::InvalidParameter("reconstruction needs a ball of dimension >= 1".into()));
    }
    let d = dim as usize;
    if r < 1 || 2 * r > d + 1 {
        return Err(Error::InvalidParameter(format!("need 1 <= r <= (d+1)/2, got r = {r} with d = {d}")));
    }
    let verdict = is_homology_ball(ball, field);
    let mut report = ReconstructReport {
        d,
        r,
        field,
        ball: verdict.clone(),
        stackedness_index: None,
        boundary_facets: None,
        reconstructed: None,
        h_equality: None,
        verdict: Verdict::PreconditionFailed,
        witness: None,
    };
    if !verdict.is_ball() {
        report.witness = Some(witness("homology-ball", verdict.witness.map(|w| w.face), "input is not a homology ball"));
        return Ok(report);
    }
    let interior = interior_faces(ball, field)?;
    let lowest = *interior.iter().min_by_key(|f| f.card()).expect("facets are interior");
    let index = d - lowest.dim() as usize;
    report.stackedness_index = Some(index);
    if index > r - 1 {
        report.witness = Some(witness(
            "stackedness",
            Some(lowest),
            format!("ball is {index}-stacked, not {}-stacked", r - 1),
        ));
        return Ok(report);
    }
    let boundary = boundary_complex(ball, field)?;
    report.boundary_facets = Some(boundary.facets().len());
    let rebuilt = boundary.delta_i(d - r);
    let same = rebuilt == *ball;
    report.reconstructed = Some(same);
    let h = boundary.h_vector();
    let h_ok = (2 * r <= d).then(|| h.get(r - 1) == h.get(r));
    report.h_equality = h_ok;
    report.verdict = if same && h_ok != Some(false) { Verdict::Verified } else { Verdict::Refuted };
    if !same {
        report.witness = Some(witness(
            "reconstruction",
            first_difference(&rebuilt, ball),
            format!("Δ({}) of the boundary differs from the ball", d - r),
        ));
    } else if h_ok == Some(false) {
        report.witness = Some(witness(
            "h-equality",
            None,
            format!("h_{} = {} but h_{r} = {}", r - 1, h.get(r - 1), h.get(r)),
        ));
    }
    Ok(report)
}
