//! Acceptance suite: one PASS/FAIL/SKIP line per criterion.
//!
//! Runs without the libtest harness so the report is always printed; the
//! process exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::oracle_betti;
use glbc_core::algebra::{
    gin, hilbert_function, hilbert_function_monomial, sr_ideal, truncation_cm_check, wlp_check, GinOptions, Ideal,
    Monomial, Polynomial, TruncationVerdict, DEFAULT_MAX_SPAIRS,
};
use glbc_core::generators::{
    cross_polytope, cycle, cyclic_boundary, k8, k9, rudin_fixture, simplex_boundary, stacked_ball_and_sphere,
    stacked_polytope_coords,
};
use glbc_core::geometry::{certify_geometric_triangulation, swapped_diagonal_corruption};
use glbc_core::homology::{betti_numbers, boundary_complex, is_cohen_macaulay};
use glbc_core::verify::{glbc_verify, uniqueness_probe, GlbcOptions, UniquenessLimits, Verdict};
use glbc_core::{Error, Face, FieldSpec, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::Rationals;

enum Status {
    Pass(String),
    Fail(String),
    Skip(String),
}

/// Ensures `cond`, or fails the criterion with `msg`.
fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A stacked ball together with the `r` it is tested at.
struct Instance {
    name: String,
    ball: SimplicialComplex,
    sphere: SimplicialComplex,
    d: usize,
    r: usize,
}

/// The 50 seeded stacked balls plus the join family.
fn reconstruction_corpus() -> Vec<Instance> {
    let mut out = Vec::new();
    for seed in 0..50u64 {
        let d = 3 + seed as usize % 4;
        let n = d + 2 + (seed as usize / 4) % (12 - d - 1);
        let s = stacked_ball_and_sphere(d, n, seed).unwrap();
        out.push(Instance { name: format!("stacked(d={d}, n={n}, seed={seed})"), sphere: s.sphere, ball: s.ball, d, r: 2 });
    }
    for (name, ball) in [("K8", k8()), ("K9", k9())] {
        let sphere = boundary_complex(&ball, Q).unwrap();
        let d = ball.dim() as usize;
        out.push(Instance { name: name.into(), ball, sphere, d, r: 3 });
    }
    out
}

fn rudin() -> Status {
    match rudin_fixture(None) {
        Err(Error::FixtureUnavailable(why)) => Status::Skip(format!("fixture absent ({why})")),
        Err(e) => Status::Fail(format!("fixture unreadable: {e}")),
        Ok(ball) => {
            let (f, h) = (ball.f_vector().0, ball.h_vector().0);
            if f == [1, 14, 66, 94, 41] && h == [1, 10, 30, 0, 0] {
                Status::Pass(format!("f = {f:?}, h = {h:?}"))
            } else {
                Status::Fail(format!("f = {f:?}, h = {h:?}"))
            }
        }
    }
}

fn reconstruction() -> Result<String, String> {
    let corpus = reconstruction_corpus();
    for inst in &corpus {
        let rebuilt = inst.sphere.delta_i(inst.d - inst.r);
        ensure(rebuilt == inst.ball, || format!("{}: Δ(d-r) differs from the ball", inst.name))?;
    }
    Ok(format!("{} balls reconstructed exactly", corpus.len()))
}

fn forward_implication() -> Result<String, String> {
    let mut checked = 0;
    for inst in reconstruction_corpus().iter().filter(|i| 2 * i.r <= i.d) {
        let h = inst.sphere.h_vector().0;
        ensure(h[inst.r - 1] == h[inst.r], || format!("{}: h = {h:?}", inst.name))?;
        checked += 1;
    }
    Ok(format!("h_(r-1) = h_r on {checked} boundaries"))
}

/// Spheres `glbc_verify` must certify, with their `r`.
fn verified_instances() -> Vec<(String, SimplicialComplex, usize)> {
    let mut out: Vec<(String, SimplicialComplex, usize)> =
        (1..=8).map(|d| (format!("∂Δ^{d}"), simplex_boundary(d).unwrap(), 1)).collect();
    for inst in reconstruction_corpus() {
        if inst.name != "K8" {
            out.push((format!("∂{}", inst.name), inst.sphere, inst.r));
        }
    }
    out
}

fn glbc_pipeline() -> Result<String, String> {
    let opts = GlbcOptions::default();
    let verified = verified_instances();
    for (name, sphere, r) in &verified {
        let rep = glbc_verify(sphere, *r, Q, &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.verdict == Verdict::Verified, || format!("{name}: {:?} {:?}", rep.verdict, rep.witness))?;
    }
    let mut negative = vec![
        ("C(4,7)".to_string(), cyclic_boundary(4, 7).unwrap()),
        ("C(5,8)".to_string(), cyclic_boundary(5, 8).unwrap()),
    ];
    negative.extend((3..=5).map(|d| (format!("cross-polytope d={d}"), cross_polytope(d).unwrap())));
    for (name, sphere) in &negative {
        let r = if name.starts_with('C') { 2 } else { 1 };
        let rep = glbc_verify(sphere, r, Q, &opts).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.verdict == Verdict::PreconditionFailed, || format!("{name}: {:?}", rep.verdict))?;
    }
    Ok(format!("{} verified, {} precondition-failed", verified.len(), negative.len()))
}

fn wlp() -> Result<String, String> {
    let mut cases: Vec<(String, SimplicialComplex)> =
        (1..=8).map(|d| (format!("∂Δ^{d}"), simplex_boundary(d).unwrap())).collect();
    cases.extend((2..=5).map(|d| (format!("cross-polytope d={d}"), cross_polytope(d).unwrap())));
    cases.push(("stacked 4-sphere n=7".into(), stacked_ball_and_sphere(4, 7, 0).unwrap().sphere));
    cases.push(("C(4,7)".into(), cyclic_boundary(4, 7).unwrap()));
    let mut retries = 0;
    for (name, c) in &cases {
        let rep = wlp_check(c, 1).map_err(|e| format!("{name}: {e}"))?;
        ensure(rep.holds(), || format!("{name}: {:?}", rep.verdict))?;
        for (k, &r) in rep.ranks.iter().enumerate() {
            ensure(r == rep.dims[k].min(rep.dims[k + 1]), || format!("{name}: rank {r} in degree {k}"))?;
        }
        let extra = rep.w_attempts + rep.theta_attempts - 2;
        ensure(extra <= 3, || format!("{name}: {extra} retries"))?;
        retries += extra;
    }
    Ok(format!("WLP holds on {} complexes ({retries} retries)", cases.len()))
}

fn cross_validation() -> Result<String, String> {
    let mut cm = 0;
    for (name, sphere, r) in verified_instances() {
        let d = (sphere.dim() + 1) as usize;
        if 2 * r > d {
            continue;
        }
        let v = is_cohen_macaulay(&sphere.delta_i(r - 1), Q);
        ensure(v.cohen_macaulay, || format!("{name}: Δ(r-1) fails Reisner at {:?}", v.witness))?;
        cm += 1;
    }
    let cases = [
        ("∂Δ^4", simplex_boundary(4).unwrap(), 2),
        ("stacked 4-sphere n=7", stacked_ball_and_sphere(4, 7, 0).unwrap().sphere, 2),
        ("∂K9", boundary_complex(&k9(), Q).unwrap(), 3),
    ];
    let mut gin_runs = 0;
    for (name, sphere, r) in cases {
        match truncation_cm_check(&sphere, r, 3, DEFAULT_MAX_SPAIRS, true) {
            Ok(rep) => {
                let expected = TruncationVerdict::CohenMacaulay { dim: (sphere.dim() + 2) as usize };
                ensure(rep.verdict == expected, || format!("{name}: {:?}", rep.verdict))?;
                ensure(rep.truncation_matches != Some(false), || format!("{name}: truncated gin differs"))?;
                gin_runs += 1;
            }
            Err(Error::SeedsDisagree { seed_a, seed_b }) => {
                return Err(format!("{name}: gin seeds {seed_a} and {seed_b} disagree"));
            }
            Err(Error::ResourceBudget(why)) => println!("    note: {name} exceeded the gin budget ({why})"),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(format!("Δ(r-1) Cohen–Macaulay on {cm} instances; truncation check passed on {gin_runs}/3 with agreeing seeds"))
}

/// A random homogeneous generator: a monomial or a binomial `x^a - x^b`.
fn random_generator(g: &mut ChaCha8Rng, n: usize) -> Polynomial {
    let deg = g.random_range(1..=4);
    let mut mono = || {
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[g.random_range(0..n)] += 1;
        }
        Monomial::new(e)
    };
    let (a, b) = (mono(), mono());
    if a != b && g.random_bool(0.5) {
        Polynomial::monomial(a).sub(&Polynomial::monomial(b))
    } else {
        Polynomial::monomial(a)
    }
}

fn gin_engine() -> Result<String, String> {
    let opts = GinOptions::new(0);
    let x1x2 = Ideal::from_monomials(2, [Monomial::new(vec![1, 1])]);
    let g = gin(&x1x2, &opts).map_err(|e| e.to_string())?;
    ensure(g.generators == [Monomial::new(vec![2, 0])], || format!("gin((x1x2)) = {:?}", g.generators))?;
    let g = gin(&sr_ideal(&cycle(4).unwrap()), &opts).map_err(|e| e.to_string())?;
    let mut expected = vec![Monomial::new(vec![2, 0, 0, 0]), Monomial::new(vec![1, 1, 0, 0]), Monomial::new(vec![0, 3, 0, 0])];
    expected.sort();
    let mut got = g.generators.clone();
    got.sort();
    ensure(got == expected, || format!("gin(I_C4) = {:?}", g.generators))?;

    const CAP: u32 = 6;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..20 {
        let n = rng.random_range(2..=5);
        let k = rng.random_range(1..=3);
        let gens = (0..k).map(|_| random_generator(&mut rng, n)).collect();
        let ideal = Ideal::new(n, gens).map_err(|e| e.to_string())?;
        let res = gin(&ideal, &GinOptions { degree_cap: Some(CAP), ..GinOptions::new(i) }).map_err(|e| format!("ideal {i}: {e}"))?;
        ensure(res.strongly_stable, || format!("ideal {i}: gin not strongly stable"))?;
        let lhs = hilbert_function(&ideal, CAP).map_err(|e| e.to_string())?;
        let rhs = hilbert_function_monomial(n, &res.generators, CAP);
        ensure(lhs == rhs, || format!("ideal {i}: Hilbert functions {lhs:?} vs {rhs:?}"))?;
    }
    Ok("examples match; 20 random ideals keep their Hilbert functions up to degree 6".into())
}

fn geometry() -> Result<String, String> {
    let mut certified = 0;
    let mut controls = 0;
    for d in 2..=4usize {
        for n in d + 1..=10 {
            let seed = (d * 100 + n) as u64;
            let (sphere, coords) = stacked_polytope_coords(d, n, seed).map_err(|e| e.to_string())?;
            let name = format!("stacked polytope d={d} n={n}");
            let literal = certify_geometric_triangulation(&sphere.delta_i(d - 2), &sphere, &coords);
            let triangulation = if d == 2 && n > 3 {
                // Δ(0) of a polygon is the full simplex on its vertices, which
                // is not 2-dimensional; certify the stacking instead.
                ensure(matches!(literal, Err(Error::Precondition(_))), || format!("{name}: Δ(0) was accepted"))?;
                stacked_ball_and_sphere(d, n, seed).unwrap().ball
            } else {
                sphere.delta_i(d - 2)
            };
            let rep = certify_geometric_triangulation(&triangulation, &sphere, &coords).map_err(|e| format!("{name}: {e}"))?;
            ensure(rep.pass && rep.volume_polytope == rep.volume_facets, || format!("{name}: {rep:?}"))?;
            certified += 1;
            if let Some(bad) = swapped_diagonal_corruption(&triangulation, &coords) {
                let rep = certify_geometric_triangulation(&bad, &sphere, &coords).map_err(|e| format!("{name}: {e}"))?;
                ensure(!rep.pass && !rep.pairwise_ok && rep.witness.is_some(), || {
                    format!("{name}: corrupted complex not caught at the pairwise check")
                })?;
                controls += 1;
            }
        }
    }
    ensure(controls > 0, || "no negative control was built".into())?;
    Ok(format!(
        "{certified} triangulations certified with equal volumes; {controls} corruptions caught with witnesses; d=2, n>3 uses the stacked triangulation since Δ(0) is not 2-dimensional"
    ))
}

fn homology() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for i in 0..100 {
        let n = rng.random_range(1..=7);
        let k = rng.random_range(1..=8);
        let facets: Vec<Face> = (0..k).map(|_| Face::from_bits(rng.random_range(0..(1u64 << n)))).collect();
        let c = SimplicialComplex::from_facets(n, facets).unwrap();
        let faces: Vec<u64> = c.faces().map(Face::bits).collect();
        for (field, p) in [(Q, None), (FieldSpec::prime(2).unwrap(), Some(2))] {
            let got = betti_numbers(&c, field);
            let expected = oracle_betti(&faces, p);
            for (j, &e) in expected.iter().enumerate() {
                ensure(got.get(j as isize - 1) == e, || format!("complex {i} over {field}: {:?} vs {expected:?}", got.values))?;
            }
            let chi: i64 = c.f_vector().0.iter().enumerate().map(|(j, &f)| if j % 2 == 0 { -(f as i64) } else { f as i64 }).sum();
            let beta: i64 =
                got.values.iter().enumerate().map(|(j, &b)| if j % 2 == 0 { -(b as i64) } else { b as i64 }).sum();
            ensure(chi == beta, || format!("complex {i}: Euler identity fails"))?;
        }
    }
    Ok("100 random complexes match the chain-rank oracle over ℚ and F2".into())
}

fn uniqueness() -> Result<String, String> {
    let limits = UniquenessLimits::default();
    let b5 = SimplicialComplex::from_vertex_lists(5, &[vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
    let sphere = boundary_complex(&b5, Q).unwrap();
    let found = uniqueness_probe(&sphere, 2, Q, &limits).map_err(|e| e.to_string())?;
    ensure(found == [b5], || format!("∂B5: {found:?}"))?;
    let found = uniqueness_probe(&simplex_boundary(3).unwrap(), 1, Q, &limits).map_err(|e| e.to_string())?;
    ensure(found == [SimplicialComplex::simplex(4)], || format!("∂Δ^3: {found:?}"))?;
    Ok("both probes return exactly one ball".into())
}

fn main() -> ExitCode {
    type Criterion = (u32, &'static str, Duration, fn() -> Status);
    fn wrap(f: fn() -> Result<String, String>) -> Status {
        match f() {
            Ok(s) => Status::Pass(s),
            Err(s) => Status::Fail(s),
        }
    }
    let criteria: [Criterion; 10] = [
        (1, "Rudin fixture arithmetic", Duration::from_secs(1), rudin),
        (2, "reconstruction suite", Duration::from_secs(60), || wrap(reconstruction)),
        (3, "forward implication", Duration::from_secs(60), || wrap(forward_implication)),
        (4, "GLBC pipeline", Duration::from_secs(300), || wrap(glbc_pipeline)),
        (5, "WLP certification", Duration::from_secs(300), || wrap(wlp)),
        (6, "algebra/topology cross-validation", Duration::from_secs(300), || wrap(cross_validation)),
        (7, "gin engine", Duration::from_secs(120), || wrap(gin_engine)),
        (8, "geometric certification", Duration::from_secs(120), || wrap(geometry)),
        (9, "homology engine", Duration::from_secs(120), || wrap(homology)),
        (10, "uniqueness oracle", Duration::from_secs(60), || wrap(uniqueness)),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let status = run();
        let elapsed = start.elapsed();
        let status = match status {
            Status::Pass(_) if elapsed > limit => Status::Fail(format!("took {elapsed:.2?}, limit {limit:?}")),
            s => s,
        };
        let (tag, detail) = match status {
            Status::Pass(s) => ("PASS", s),
            Status::Fail(s) => {
                failed += 1;
                ("FAIL", s)
            }
            Status::Skip(s) => ("SKIP", s),
        };
        println!("{tag} [{id:>2}] {name} ({elapsed:.2?}, limit {limit:?}): {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
