//! Construction of projected scrolls `S_{1,v} ⇢ P^5` with a planned number
//! of double points.
//!
//! Four chains of rulings are planted so that each chain projects into a
//! plane. Column `v_i` (`i ≤ 4`) of `Λ` lives in the `θ`-block and is killed by
//! the Vandermonde blocks of the three other chains, so `P_i·Λ` has rank 3 and
//! the `k_i` rulings of chain `i` meet pairwise. The remaining columns are
//! random. Everything is built over `Q` and then checked modulo each
//! verification prime.

mod plan;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::field::{check_prime, Field, Fp, Q};
use crate::algebra::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scroll::{
    ruling_matrix, scan_points, singular_pairs, theta, theta_prime, ParamPoint, ProjectionJson, ProjectionMatrix,
    ScrollSpec, SingularScrollReport,
};

pub use plan::{four_square_plans, odd_square_form, ChainPlan, ChainSizes};

/// Attempts allowed for each randomized stage.
pub const RETRY_BUDGET: usize = 100;

/// Random integer entries are drawn from `[-COEFF_RANGE, COEFF_RANGE]`.
const COEFF_RANGE: i64 = 9;

/// Target space of every construction.
pub const TARGET_N: u32 = 5;

/// Rows `(1, s, ..., s^v)` for each parameter.
pub fn vandermonde_block<F: Field>(ctx: F::Ctx, v: u32, params: &[i64]) -> ExactMatrix<F> {
    let rows = params
        .iter()
        .map(|&s| {
            let s = F::from_i64(ctx, s);
            let mut acc = F::one(ctx);
            (0..=v)
                .map(|_| {
                    let out = acc.clone();
                    acc = acc.mul(&s);
                    out
                })
                .collect()
        })
        .collect();
    ExactMatrix::from_rows(ctx, rows).expect("rows have equal length")
}

fn check_spec(spec: &ScrollSpec) -> Result<()> {
    if spec.u() != 1 || spec.n() != TARGET_N {
        return Err(Error::Unsupported(format!(
            "constructions are implemented for u = 1, N = {TARGET_N}; got {spec:?}"
        )));
    }
    Ok(())
}

/// Kernel basis of each chain's Vandermonde block `P_i^B`; basis `i` has
/// `v + 1 − k_i` vectors.
pub fn vandermonde_kernels(spec: &ScrollSpec, plan: &ChainPlan) -> Result<[Vec<Vec<Q>>; 4]> {
    check_spec(spec)?;
    let plan = ChainPlan::new(plan.sizes, plan.params.clone(), spec.v())?;
    Ok(plan.params.clone().map(|list| vandermonde_block::<Q>((), spec.v(), &list).kernel_basis()))
}

/// The four `θ`-block frame vectors: `v_i` is killed by every chain but
/// chain `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameChoice {
    /// The rulings actually used; they differ from the requested plan when
    /// the frame search had to perturb them.
    pub plan: ChainPlan,
    pub vectors: [Vec<Q>; 4],
}

impl FrameChoice {
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.vectors.iter().map(|v| v.iter().map(Field::to_decimal).collect()).collect()
    }
}

fn primitive(v: Vec<Q>) -> Vec<Q> {
    match Q::content_normalizer(&v) {
        Some(c) => v.iter().map(|x| x.mul(&c)).collect(),
        None => v,
    }
}

fn random_int(rng: &mut ChaCha8Rng) -> Q {
    Q::int(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE))
}

fn sample_frame(spec: &ScrollSpec, plan: &ChainPlan, rng: &mut ChaCha8Rng) -> Result<Option<[Vec<Q>; 4]>> {
    let v = spec.v();
    let blocks: Vec<ExactMatrix<Q>> = plan.params.iter().map(|l| vandermonde_block((), v, l)).collect();
    let mut out: Vec<Vec<Q>> = Vec::with_capacity(4);
    for i in 0..4 {
        let others: Vec<i64> = (0..4).filter(|&j| j != i).flat_map(|j| plan.params[j].clone()).collect();
        let basis = vandermonde_block::<Q>((), v, &others).kernel_basis();
        if basis.iter().all(|b| blocks[i].apply(b).expect("shape").iter().all(Q::is_zero)) {
            return Err(Error::PlanInfeasible(format!(
                "no vector is killed by every chain but chain {i} ({} rulings outside it, v = {v})",
                others.len()
            )));
        }
        let mut w = vec![Q::zero(()); v as usize + 1];
        for b in &basis {
            let c = random_int(rng);
            for (wi, bi) in w.iter_mut().zip(b) {
                *wi = wi.add(&bi.mul(&c));
            }
        }
        if blocks[i].apply(&w)?.iter().all(Q::is_zero) {
            return Ok(None);
        }
        out.push(primitive(w));
    }
    Ok(Some(out.try_into().expect("four vectors")))
}

/// Whether the tangent lines of the `θ`-curve avoid `∩ v_i^⊥` over `F_p`.
fn curve_tangents_clear(spec: &ScrollSpec, vectors: &[Vec<Q>; 4], p: u32) -> Result<bool> {
    let cols: Vec<Vec<Fp>> = vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x.reduce(p).ok_or_else(|| bad_denominator(p)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    let frame = ExactMatrix::from_columns(p, &cols)?;
    for s in scan_points(p) {
        let rows = vec![theta::<Fp>(p, spec, &s)[2..].to_vec(), theta_prime::<Fp>(p, spec, &s)[2..].to_vec()];
        if ExactMatrix::from_rows(p, rows)?.mul(&frame)?.rank() < 2 {
            return Ok(false);
        }
    }
    Ok(true)
}

fn bad_denominator(p: u32) -> Error {
    Error::BadReduction {
        prime: p,
        detail: "prime divides a denominator".into(),
    }
}

fn resample_params(plan: &ChainPlan, v: u32, bound: i64, rng: &mut ChaCha8Rng) -> Result<ChainPlan> {
    let total: usize = plan.sizes.iter().map(|&k| k as usize).sum();
    if (bound as usize) < total {
        return Err(Error::SearchFailed {
            stage: "pick_frame".into(),
            detail: format!("cannot choose {total} distinct rulings below {bound}"),
        });
    }
    let mut pool = sample(rng, bound as usize, total).into_iter().map(|x| x as i64);
    let params = plan.sizes.map(|k| (0..k).map(|_| pool.next().expect("enough samples")).collect());
    ChainPlan::new(plan.sizes, params, v)
}

/// Verification primes must be prime and keep every pair of ruling
/// parameters distinct.
pub fn check_primes(plan: &ChainPlan, primes: &[u32]) -> Result<()> {
    if primes.is_empty() {
        return Err(Error::Domain("at least one verification prime is needed".into()));
    }
    let params: Vec<i64> = plan.all_params().collect();
    for &p in primes {
        check_prime(p)?;
        for (i, a) in params.iter().enumerate() {
            for b in &params[..i] {
                if (a - b).rem_euclid(p as i64) == 0 {
                    return Err(Error::BadReduction {
                        prime: p,
                        detail: format!("ruling parameters {b} and {a} collide"),
                    });
                }
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameStats {
    pub attempts: usize,
    pub rulings_resampled: usize,
}

fn pick_frame_with(
    spec: &ScrollSpec,
    plan: &ChainPlan,
    primes: &[u32],
    rng: &mut ChaCha8Rng,
) -> Result<(FrameChoice, FrameStats)> {
    check_spec(spec)?;
    let mut plan = ChainPlan::new(plan.sizes, plan.params.clone(), spec.v())?;
    check_primes(&plan, primes)?;
    let bound = *primes.iter().min().expect("nonempty") as i64;
    let mut stats = FrameStats::default();
    let mut last = String::from("no attempt made");
    for _ in 0..RETRY_BUDGET {
        stats.attempts += 1;
        let Some(vectors) = sample_frame(spec, &plan, rng)? else {
            last = "a frame vector fell into its own chain's kernel".into();
            continue;
        };
        let b = ExactMatrix::from_columns((), &vectors)?;
        if b.rank() < 4 {
            last = "frame vectors are dependent".into();
            continue;
        }
        let mut clear = true;
        for &p in primes {
            if !curve_tangents_clear(spec, &vectors, p)? {
                last = format!("a tangent line of the θ-curve meets the frame's common kernel mod {p}");
                clear = false;
                break;
            }
        }
        if clear {
            return Ok((FrameChoice { plan, vectors }, stats));
        }
        plan = resample_params(&plan, spec.v(), bound, rng)?;
        stats.rulings_resampled += 1;
    }
    Err(Error::SearchFailed {
        stage: "pick_frame".into(),
        detail: format!("{RETRY_BUDGET} attempts exhausted; last failure: {last}"),
    })
}

/// Samples `v_1, ..., v_4`, perturbing the rulings whenever a tangent line
/// of the `θ`-curve meets their common kernel.
pub fn pick_frame(spec: &ScrollSpec, plan: &ChainPlan, seed: u64, primes: &[u32]) -> Result<FrameChoice> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    pick_frame_with(spec, plan, primes, &mut rng).map(|(f, _)| f)
}

/// `rank(P_i·Λ)` for each chain with at least two rulings.
pub fn chain_ranks(pm: &ProjectionMatrix<Fp>, plan: &ChainPlan) -> Result<Vec<usize>> {
    plan.params
        .iter()
        .filter(|l| l.len() >= 2)
        .map(|l| {
            let pts: Vec<ParamPoint> = l.iter().map(|&s| ParamPoint::Finite(s)).collect();
            Ok(ruling_matrix::<Fp>(pm.ctx(), pm.spec(), &pts)?.mul(pm.lambda())?.rank())
        })
        .collect()
}

fn lift(spec: &ScrollSpec, b: &[Q]) -> Vec<Q> {
    let mut out = vec![Q::zero(()); spec.source_dim() - b.len()];
    out.extend_from_slice(b);
    out
}

fn complete_with(
    spec: &ScrollSpec,
    frame: &FrameChoice,
    primes: &[u32],
    rng: &mut ChaCha8Rng,
) -> Result<(ProjectionMatrix<Q>, Vec<SingularScrollReport>, usize)> {
    check_spec(spec)?;
    let mut last = String::from("no attempt made");
    for attempt in 1..=RETRY_BUDGET {
        let mut cols: Vec<Vec<Q>> = frame.vectors.iter().map(|b| lift(spec, b)).collect();
        for _ in 0..2 {
            cols.push((0..spec.source_dim()).map(|_| random_int(rng)).collect());
        }
        let pm = ProjectionMatrix::from_columns(*spec, (), &cols)?;
        if pm.rank() < spec.target_dim() {
            last = "Λ is not of full rank".into();
            continue;
        }
        let mut reports = Vec::with_capacity(primes.len());
        for &p in primes {
            let pmp = pm.reduce(p)?;
            if pmp.rank() < spec.target_dim() {
                last = format!("Λ drops rank mod {p}");
                break;
            }
            if chain_ranks(&pmp, &frame.plan)?.iter().any(|&r| r != 3) {
                last = format!("a planted chain does not span a plane mod {p}");
                break;
            }
            let rep = singular_pairs(&pmp)?;
            if !rep.tangent_clearance || !rep.tangent_clearance_closure {
                last = format!("the center meets the tangent variety mod {p}");
                break;
            }
            if !rep.degenerate_pairs.is_empty() || (rep.pair_count as u64) < frame.plan.r {
                last = format!("{} pairs and {} degenerate pairs mod {p}", rep.pair_count, rep.degenerate_pairs.len());
                break;
            }
            reports.push(rep);
        }
        if reports.len() == primes.len() {
            return Ok((pm, reports, attempt));
        }
    }
    Err(Error::SearchFailed {
        stage: "complete_projection".into(),
        detail: format!("{RETRY_BUDGET} attempts exhausted; last failure: {last}"),
    })
}

/// Appends random `v_5, v_6` until `Λ` has full rank and passes every check
/// modulo each prime.
pub fn complete_projection(
    spec: &ScrollSpec,
    frame: &FrameChoice,
    seed: u64,
    primes: &[u32],
) -> Result<ProjectionMatrix<Q>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    complete_with(spec, frame, primes, &mut rng).map(|(pm, _, _)| pm)
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub seed: u64,
    pub primes: Vec<u32>,
    pub requested: ChainPlan,
    pub frame: FrameChoice,
    pub frame_stats: FrameStats,
    pub completion_attempts: usize,
    pub projection: ProjectionMatrix<Q>,
    pub reports: Vec<SingularScrollReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionReport {
    pub spec: ScrollSpec,
    pub seed: u64,
    pub primes: Vec<u32>,
    pub requested_plan: ChainPlan,
    pub plan: ChainPlan,
    pub frame_vectors: Vec<Vec<String>>,
    pub frame_stats: FrameStats,
    pub completion_attempts: usize,
    pub lambda_digest: String,
    pub reports: Vec<SingularScrollReport>,
}

impl Construction {
    pub fn report(&self) -> ConstructionReport {
        ConstructionReport {
            spec: *self.projection.spec(),
            seed: self.seed,
            primes: self.primes.clone(),
            requested_plan: self.requested.clone(),
            plan: self.frame.plan.clone(),
            frame_vectors: self.frame.to_strings(),
            frame_stats: self.frame_stats,
            completion_attempts: self.completion_attempts,
            lambda_digest: self.projection.digest(),
            reports: self.reports.clone(),
        }
    }

    pub fn lambda_json(&self) -> ProjectionJson {
        self.projection.to_json()
    }
}

/// Plans, frames and completes a projection of `S_{1,v}` to `P^5` with at
/// least `r` double points, verified modulo each prime. The first plan of
/// [`four_square_plans`] is used with default rulings.
pub fn construct_scroll(r: u64, v: u32, seed: u64, primes: &[u32]) -> Result<Construction> {
    if v < 4 {
        return Err(Error::PlanInfeasible(format!("need v >= 4, got {v}")));
    }
    let sizes = *four_square_plans(r, v)
        .first()
        .ok_or_else(|| Error::PlanInfeasible(format!("no four chains give {r} double points with v = {v}")))?;
    let spec = ScrollSpec::new(1, v, TARGET_N)?;
    let requested = ChainPlan::with_default_params(sizes, v)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (frame, frame_stats) = pick_frame_with(&spec, &requested, primes, &mut rng)?;
    let (projection, reports, completion_attempts) = complete_with(&spec, &frame, primes, &mut rng)?;
    Ok(Construction {
        seed,
        primes: primes.to_vec(),
        requested,
        frame,
        frame_stats,
        completion_attempts,
        projection,
        reports,
    })
}
