use std::cmp::Ordering;

use super::{random_point, widths, BaselineConfig, Budget};
use crate::constraints::EvaluatedPoint;
use crate::error::Result;
use crate::problem::Problem;
use crate::rng::RandomStream;

/// Generational real-coded GA: elites carried over, the rest of the next
/// generation bred by tournament selection, BLX-alpha crossover and
/// per-gene Gaussian mutation.
pub(super) fn run(
    problem: &Problem,
    config: &BaselineConfig,
    budget: &mut Budget,
    stream: &mut RandomStream,
) -> Result<usize> {
    let p = &config.ga;
    let n = config.population;
    let d = problem.dimension();
    let mutation_rate = p.mutation_rate.unwrap_or(1.0 / d as f64);
    let sigma: Vec<f64> = widths(problem).iter().map(|w| w * p.mutation_scale).collect();

    let mut population: Vec<EvaluatedPoint> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut x = random_point(problem, stream);
        population.push(budget.evaluate(&mut x)?.expect("budget covers the population"));
    }
    budget.mark();

    let mut generations = 0;
    while !budget.exhausted() {
        let handler = *budget.handler();
        let mut ranked = population.clone();
        ranked.sort_by(|a, b| handler.compare(a, b));
        let mut next: Vec<EvaluatedPoint> = ranked[..p.elites].to_vec();

        'breed: while next.len() < n {
            let a = tournament(&population, p.tournament_size, stream, |x, y| handler.compare(x, y));
            let b = tournament(&population, p.tournament_size, stream, |x, y| handler.compare(x, y));
            let (mut c1, mut c2) = if stream.uniform01() < p.crossover_rate {
                blend(&population[a].position, &population[b].position, p.blend_alpha, stream)
            } else {
                (population[a].position.clone(), population[b].position.clone())
            };
            for child in [&mut c1, &mut c2] {
                for k in 0..d {
                    if stream.uniform01() < mutation_rate {
                        child[k] += sigma[k] * stream.standard_normal();
                    }
                }
            }
            for mut child in [c1, c2] {
                if next.len() == n {
                    break;
                }
                match budget.evaluate(&mut child)? {
                    Some(e) => next.push(e),
                    None => break 'breed,
                }
            }
        }
        // A generation cut short by the budget keeps the best of both.
        if next.len() < n {
            let mut pool: Vec<EvaluatedPoint> = population.into_iter().chain(next).collect();
            pool.sort_by(|a, b| handler.compare(a, b));
            pool.truncate(n);
            next = pool;
        }
        population = next;
        generations += 1;
        budget.mark();
    }
    Ok(generations)
}

fn tournament(
    population: &[EvaluatedPoint],
    size: usize,
    stream: &mut RandomStream,
    cmp: impl Fn(&EvaluatedPoint, &EvaluatedPoint) -> Ordering,
) -> usize {
    let mut winner = stream.index(population.len());
    for _ in 1..size {
        let challenger = stream.index(population.len());
        if cmp(&population[challenger], &population[winner]) == Ordering::Less {
            winner = challenger;
        }
    }
    winner
}

fn blend(a: &[f64], b: &[f64], alpha: f64, stream: &mut RandomStream) -> (Vec<f64>, Vec<f64>) {
    let mut child = || -> Vec<f64> {
        a.iter()
            .zip(b)
            .map(|(x, y)| {
                let (lo, hi) = (x.min(*y), x.max(*y));
                let span = hi - lo;
                lo - alpha * span + (1.0 + 2.0 * alpha) * span * stream.uniform01()
            })
            .collect()
    };
    let c1 = child();
    let c2 = child();
    (c1, c2)
}
