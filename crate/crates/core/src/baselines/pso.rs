use super::{random_point, widths, BaselineConfig, Budget};
use crate::constraints::EvaluatedPoint;
use crate::error::Result;
use crate::problem::Problem;
use crate::rng::RandomStream;

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    best: EvaluatedPoint,
}

/// Global-best PSO with inertia weight. The swarm best is updated after each
/// particle (asynchronous update). Returns the number of completed iterations.
pub(super) fn run(
    problem: &Problem,
    config: &BaselineConfig,
    budget: &mut Budget,
    stream: &mut RandomStream,
) -> Result<usize> {
    let p = &config.pso;
    let vmax: Vec<f64> = widths(problem).iter().map(|w| w * p.max_velocity_fraction).collect();
    let d = problem.dimension();

    let mut swarm = Vec::with_capacity(config.population);
    for _ in 0..config.population {
        let mut position = random_point(problem, stream);
        let velocity = vmax
            .iter()
            .map(|v| v * (2.0 * stream.uniform01() - 1.0) * 0.5)
            .collect();
        let best = budget.evaluate(&mut position)?.expect("budget covers the population");
        swarm.push(Particle {
            position,
            velocity,
            best,
        });
    }
    let mut gbest = swarm
        .iter()
        .map(|q| &q.best)
        .reduce(|a, b| if budget.handler().is_better(b, a) { b } else { a })
        .cloned()
        .expect("non-empty swarm");
    budget.mark();

    let mut iterations = 0;
    while !budget.exhausted() {
        for q in swarm.iter_mut() {
            #[allow(clippy::needless_range_loop)]
            for k in 0..d {
                let r1 = stream.uniform01();
                let r2 = stream.uniform01();
                let v = p.inertia * q.velocity[k]
                    + p.cognitive * r1 * (q.best.position[k] - q.position[k])
                    + p.social * r2 * (gbest.position[k] - q.position[k]);
                q.velocity[k] = v.clamp(-vmax[k], vmax[k]);
                q.position[k] += q.velocity[k];
            }
            let Some(e) = budget.evaluate(&mut q.position)? else {
                break;
            };
            if budget.handler().is_better(&e, &q.best) {
                q.best = e.clone();
            }
            if budget.handler().is_better(&e, &gbest) {
                gbest = e;
            }
        }
        iterations += 1;
        budget.mark();
    }
    Ok(iterations)
}
