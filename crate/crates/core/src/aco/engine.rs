//! Colony walk engine: ant state, neighborhood rules, transition choice,
//! pheromone updates and the construction loop.
//!
//! All randomness comes from one seeded stream consumed in a fixed order:
//! iterations outermost, then ants, then steps. Each ant placement takes one
//! draw; each step takes one draw for the exploit/explore decision plus one
//! more when exploring, or a single draw when a boxed-in ant relocates.
//! Results are therefore bit-identical for a given seed.

use std::collections::VecDeque;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::image::GrayImage;

use super::{
    default_ant_count, default_memory_size, heuristic_field, AcoParams, HeuristicField,
    PheromoneField,
};

/// 8-connected neighborhood in fixed enumeration order:
/// N, NE, E, SE, S, SW, W, NW.
pub const NEIGHBOR_OFFSETS: [(isize, isize); 8] = [
    (-1, 0),
    (-1, 1),
    (0, 1),
    (1, 1),
    (1, 0),
    (1, -1),
    (0, -1),
    (-1, -1),
];

/// Seeded random stream with documented value derivations.
///
/// Unit draws take the top 53 bits of one 64-bit output; index draws reduce
/// one 64-bit output modulo the range size.
pub struct DrawStream {
    rng: ChaCha8Rng,
}

impl DrawStream {
    pub fn from_seed(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform draw in [0, 1).
    pub fn next_unit(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform draw in [0, n).
    pub fn next_index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        (self.rng.next_u64() % n as u64) as usize
    }
}

/// Per-iteration set of pixels some ant has moved onto.
#[derive(Debug, Clone)]
pub struct VisitedSet {
    width: usize,
    cells: Vec<bool>,
    count: usize,
}

impl VisitedSet {
    pub fn new(width: usize, height: usize) -> Self {
        Self {
            width,
            cells: vec![false; width * height],
            count: 0,
        }
    }

    pub fn contains(&self, px: (usize, usize)) -> bool {
        self.cells[px.0 * self.width + px.1]
    }

    pub fn insert(&mut self, px: (usize, usize)) {
        let idx = px.0 * self.width + px.1;
        if !self.cells[idx] {
            self.cells[idx] = true;
            self.count += 1;
        }
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn clear(&mut self) {
        self.cells.fill(false);
        self.count = 0;
    }

    fn capacity(&self) -> usize {
        self.cells.len()
    }

    /// Row-major index of the k-th unvisited pixel.
    fn nth_unvisited(&self, k: usize) -> usize {
        let mut seen = 0;
        for (idx, &v) in self.cells.iter().enumerate() {
            if !v {
                if seen == k {
                    return idx;
                }
                seen += 1;
            }
        }
        unreachable!("k out of range");
    }
}

/// One ant: current position, bounded memory of its own recent moves and
/// the tour of pixels it has moved onto this iteration.
#[derive(Debug, Clone)]
pub struct AntState {
    position: (usize, usize),
    memory: VecDeque<(usize, usize)>,
    memory_capacity: usize,
    tour: Vec<(usize, usize)>,
}

impl AntState {
    pub fn new(position: (usize, usize), memory_capacity: usize) -> Self {
        Self {
            position,
            memory: VecDeque::with_capacity(memory_capacity.min(64)),
            memory_capacity,
            tour: Vec::new(),
        }
    }

    pub fn position(&self) -> (usize, usize) {
        self.position
    }

    pub fn remembers(&self, px: (usize, usize)) -> bool {
        self.memory.contains(&px)
    }

    /// Moves to `px` and records it in the tour and the memory window.
    pub fn record_move(&mut self, px: (usize, usize)) {
        self.position = px;
        self.tour.push(px);
        if self.memory_capacity == 0 {
            return;
        }
        if self.memory.len() == self.memory_capacity {
            self.memory.pop_front();
        }
        self.memory.push_back(px);
    }

    /// Moves to `px` without recording anything.
    pub fn relocate(&mut self, px: (usize, usize)) {
        self.position = px;
    }

    pub fn tour(&self) -> &[(usize, usize)] {
        &self.tour
    }

    pub fn into_tour(self) -> Vec<(usize, usize)> {
        self.tour
    }
}

/// In-bounds 8-neighbors of the ant's position that are neither in the
/// global visited set nor in the ant's own memory, in enumeration order.
pub fn admissible_neighbors(
    ant: &AntState,
    width: usize,
    height: usize,
    visited: &VisitedSet,
) -> Vec<(usize, usize)> {
    let (r, c) = ant.position;
    let mut out = Vec::with_capacity(8);
    for (dr, dc) in NEIGHBOR_OFFSETS {
        let nr = r as isize + dr;
        let nc = c as isize + dc;
        if nr < 0 || nc < 0 || nr >= height as isize || nc >= width as isize {
            continue;
        }
        let px = (nr as usize, nc as usize);
        if !visited.contains(px) && !ant.remembers(px) {
            out.push(px);
        }
    }
    out
}

/// Pseudorandom proportional rule over a non-empty candidate list.
///
/// With probability `q0` the best candidate by `tau * eta^beta` wins (ties
/// go to the earliest in enumeration order); otherwise one candidate is
/// sampled proportionally to `tau^alpha * eta^beta`, falling back to a
/// uniform pick when every weight is zero.
pub fn transition_choose(
    candidates: &[(usize, usize)],
    pheromone: &PheromoneField,
    heuristic: &HeuristicField,
    params: &AcoParams,
    rng: &mut DrawStream,
) -> (usize, usize) {
    assert!(!candidates.is_empty(), "no admissible neighbors");
    let q = rng.next_unit();
    if q <= params.q0 {
        let mut best = candidates[0];
        let mut best_score = f64::NEG_INFINITY;
        for &px in candidates {
            let score =
                pheromone.get(px.0, px.1) * heuristic.get(px.0, px.1).powf(params.beta);
            if score > best_score {
                best_score = score;
                best = px;
            }
        }
        return best;
    }
    let weights: Vec<f64> = candidates
        .iter()
        .map(|&(r, c)| {
            pheromone.get(r, c).powf(params.alpha) * heuristic.get(r, c).powf(params.beta)
        })
        .collect();
    let total: f64 = weights.iter().sum();
    if total <= 0.0 {
        return candidates[rng.next_index(candidates.len())];
    }
    let r = rng.next_unit() * total;
    let mut cumulative = 0.0;
    for (px, w) in candidates.iter().zip(&weights) {
        cumulative += w;
        if r < cumulative {
            return *px;
        }
    }
    candidates[candidates.len() - 1]
}

/// Evaporates the pheromone at one pixel toward `tau_init`.
///
/// Computed as `tau + phi * (tau_init - tau)`, which equals
/// `(1 - phi) * tau + phi * tau_init` and keeps `tau_init` a bit-exact
/// fixed point.
pub fn local_update(pheromone: &mut PheromoneField, px: (usize, usize), params: &AcoParams) {
    let tau = pheromone.get(px.0, px.1);
    pheromone.set(px.0, px.1, tau + params.phi * (params.tau_init - tau));
}

/// Applies the end-of-iteration deposit rule to every pixel visited this
/// iteration: `tau = (1 - rho) * tau + rho * deposit`, where deposit sums
/// each visiting ant's mean heuristic over its tour. Unvisited pixels are
/// left untouched.
pub fn global_update(
    pheromone: &mut PheromoneField,
    tours: &[Vec<(usize, usize)>],
    heuristic: &HeuristicField,
    params: &AcoParams,
) {
    let w = pheromone.width();
    let n = w * pheromone.height();
    let mut deposit = vec![0.0f64; n];
    let mut touched = vec![false; n];
    for tour in tours {
        if tour.is_empty() {
            continue;
        }
        let mean = tour
            .iter()
            .map(|&(r, c)| heuristic.get(r, c))
            .sum::<f64>()
            / tour.len() as f64;
        for &(r, c) in tour {
            deposit[r * w + c] += mean;
            touched[r * w + c] = true;
        }
    }
    for idx in 0..n {
        if touched[idx] {
            let (r, c) = (idx / w, idx % w);
            let tau = pheromone.get(r, c);
            pheromone.set(r, c, (1.0 - params.rho) * tau + params.rho * deposit[idx]);
        }
    }
}

/// Tours recorded during construction, grouped by iteration and ant.
#[derive(Debug, Clone)]
pub struct ConstructionTrace {
    pub width: usize,
    pub height: usize,
    pub tours: Vec<Vec<Vec<(usize, usize)>>>,
}

impl ConstructionTrace {
    /// Row-major mask of pixels visited in any iteration.
    pub fn ever_visited(&self) -> Vec<bool> {
        let mut mask = vec![false; self.width * self.height];
        for iteration in &self.tours {
            for tour in iteration {
                for &(r, c) in tour {
                    mask[r * self.width + c] = true;
                }
            }
        }
        mask
    }
}

/// Runs the colony over an image and returns the finished pheromone field.
pub fn construct_pheromone(img: &GrayImage, params: &AcoParams) -> Result<PheromoneField> {
    run(img, params, None)
}

/// Like [`construct_pheromone`], also returning the recorded tours for
/// diagnostics and tests.
pub fn construct_pheromone_traced(
    img: &GrayImage,
    params: &AcoParams,
) -> Result<(PheromoneField, ConstructionTrace)> {
    let mut trace = ConstructionTrace {
        width: img.width(),
        height: img.height(),
        tours: Vec::new(),
    };
    let field = run(img, params, Some(&mut trace))?;
    Ok((field, trace))
}

fn run(
    img: &GrayImage,
    params: &AcoParams,
    mut trace: Option<&mut ConstructionTrace>,
) -> Result<PheromoneField> {
    params.validate()?;
    let (w, h) = (img.width(), img.height());
    let ants = if params.ants == 0 {
        default_ant_count(w, h)
    } else {
        params.ants
    };
    let memory = if params.memory_size == 0 {
        default_memory_size(w, h, ants)
    } else {
        params.memory_size
    };
    let heuristic = heuristic_field(img, params.vmax_mode);
    let mut pheromone = PheromoneField::new(w, h, params.tau_init);
    let mut rng = DrawStream::from_seed(params.seed);
    let mut visited = VisitedSet::new(w, h);

    for _ in 0..params.iterations {
        visited.clear();
        let mut tours = Vec::with_capacity(ants);
        for _ in 0..ants {
            let start = rng.next_index(w * h);
            let mut ant = AntState::new((start / w, start % w), memory);
            for _ in 0..params.steps_per_ant {
                let candidates = admissible_neighbors(&ant, w, h, &visited);
                if candidates.is_empty() {
                    let target = relocate_target(&mut rng, &visited, w);
                    ant.relocate(target);
                } else {
                    let next = transition_choose(&candidates, &pheromone, &heuristic, params, &mut rng);
                    ant.record_move(next);
                    visited.insert(next);
                    local_update(&mut pheromone, next, params);
                }
            }
            tours.push(ant.into_tour());
        }
        global_update(&mut pheromone, &tours, &heuristic, params);
        if let Some(t) = trace.as_deref_mut() {
            t.tours.push(tours);
        }
    }
    Ok(pheromone)
}

/// Uniform pick among pixels outside the visited set; once every pixel has
/// been visited the whole grid is eligible again.
fn relocate_target(rng: &mut DrawStream, visited: &VisitedSet, width: usize) -> (usize, usize) {
    let unvisited = visited.capacity() - visited.len();
    let idx = if unvisited == 0 {
        rng.next_index(visited.capacity())
    } else {
        visited.nth_unvisited(rng.next_index(unvisited))
    };
    (idx / width, idx % width)
}
