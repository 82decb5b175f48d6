use super::{random_point, BaselineConfig, Budget};
use crate::constraints::EvaluatedPoint;
use crate::error::Result;
use crate::problem::Problem;
use crate::rng::RandomStream;

/// DE/rand/1/bin with synchronous generation replacement; a trial replaces
/// its target when it is not worse.
pub(super) fn run(
    problem: &Problem,
    config: &BaselineConfig,
    budget: &mut Budget,
    stream: &mut RandomStream,
) -> Result<usize> {
    let p = &config.de;
    let n = config.population;
    let d = problem.dimension();

    let mut population: Vec<EvaluatedPoint> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = random_point(problem, stream);
        population.push(budget.evaluate(&mut x)?.expect("budget covers the population"));
    }
    budget.mark();

    let mut generations = 0;
    while !budget.exhausted() {
        let mut next = population.clone();
        for i in 0..n {
            let [r1, r2, r3] = distinct_three(n, i, stream);
            let j_rand = stream.index(d);
            let mut trial: Vec<f64> = (0..d)
                .map(|k| {
                    if stream.uniform01() < p.crossover_rate || k == j_rand {
                        population[r1].position[k]
                            + p.differential_weight * (population[r2].position[k] - population[r3].position[k])
                    } else {
                        population[i].position[k]
                    }
                })
                .collect();
            let Some(e) = budget.evaluate(&mut trial)? else {
                break;
            };
            if !budget.handler().is_better(&population[i], &e) {
                next[i] = e;
            }
        }
        population = next;
        generations += 1;
        budget.mark();
    }
    Ok(generations)
}

fn distinct_three(n: usize, exclude: usize, stream: &mut RandomStream) -> [usize; 3] {
    let mut picked = [usize::MAX; 3];
    for slot in 0..3 {
        loop {
            let r = stream.index(n);
            if r != exclude && !picked[..slot].contains(&r) {
                picked[slot] = r;
                break;
            }
        }
    }
    picked
}
