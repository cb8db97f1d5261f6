//! Branch-and-bound search for the largest `S`-vertex-polytope in a window,
//! and brute-force oracles for finite sets.

mod geometry;
pub mod oracle;

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::certify::{check_vertex_polytope, LowerBoundCertificate};
use crate::error::{Error, Result};
use crate::exactgeom::rational::common_denominator;
use crate::exactgeom::Point;
use crate::pointsets::{parity_class_int, SetDescriptor, Window};
use geometry::{General, Ground, Planar};

pub use oracle::{DEFAULT_BUDGET, helly_oracle_hoffman, helly_oracle_hoffman_with_budget, helly_oracle_vertex, helly_oracle_vertex_with_budget};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub window: Window,
    /// Stop as soon as a configuration of this size is found.
    pub max_size_hint: Option<usize>,
    pub time_limit: Option<Duration>,
    pub worker_count: usize,
    pub report_all_maxima: bool,
}

impl SearchOptions {
    pub fn new(window: Window) -> SearchOptions {
        SearchOptions { window, max_size_hint: None, time_limit: None, worker_count: 1, report_all_maxima: false }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    /// The witness, re-validated by the vertex-polytope checker.
    pub best: LowerBoundCertificate,
    pub best_size: usize,
    pub nodes_explored: u64,
    /// The whole window was searched, so `best_size` is the maximum over it.
    pub exhausted: bool,
    /// Every maximum configuration in lexicographic order, when requested.
    pub maxima: Vec<Vec<Point>>,
    pub elapsed: Duration,
}

/// Largest `V ⊆ S ∩ window` in strict convex position with `hull(V) ∩ S = V`.
///
/// Ties go to the lexicographically smallest vertex list, independent of the
/// worker count.
pub fn max_vertex_polytope(s: &SetDescriptor, opts: &SearchOptions) -> Result<SearchResult> {
    let start = Instant::now();
    if opts.worker_count == 0 {
        return Err(Error::Invalid("worker count must be at least 1".into()));
    }
    if !s.is_discrete() {
        return Err(Error::NotEnumerable(format!("{} is not discrete", s.kind())));
    }
    let points = s.enumerate(&opts.window)?;
    if points.is_empty() {
        return Err(Error::Invalid("S has no points in the window".into()));
    }
    let ints = integer_rows(&points)?;
    let classes = lattice_classes(s, &ints);
    let d = ints[0].len();
    let ground: Box<dyn Ground> = if d == 2 { Box::new(Planar::new(ints)) } else { Box::new(General::new(ints)) };

    let run = Run::new(ground.as_ref(), classes, opts, start);
    let outcome = run.go();

    let pick = |idx: &[usize]| idx.iter().map(|&i| points[i].clone()).collect::<Vec<Point>>();
    let witness = pick(&outcome.best);
    let best = check_vertex_polytope(s, &witness)?;
    if !best.verdict.is_valid() {
        return Err(Error::Invalid(format!("search produced a configuration the checker rejects: {:?}", best.verdict)));
    }
    Ok(SearchResult {
        best_size: witness.len(),
        best,
        nodes_explored: outcome.nodes,
        exhausted: outcome.exhausted,
        maxima: outcome.maxima.iter().map(|m| pick(m)).collect(),
        elapsed: start.elapsed(),
    })
}

/// Integer coordinates for the ground set; rational points are scaled by a
/// common denominator, which preserves convex position and hull membership.
fn integer_rows(points: &[Point]) -> Result<Vec<Vec<i64>>> {
    let rows: Vec<Vec<_>> = points
        .iter()
        .map(|p| p.to_rational().ok_or_else(|| Error::UnsupportedCoordinates(format!("{p} is not rational"))))
        .collect::<Result<_>>()?;
    let den = rows.iter().fold(num_bigint::BigInt::from(1), |acc, r| acc.lcm(&common_denominator(r.iter())));
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    (x * &den).to_integer().to_i64().ok_or_else(|| Error::UnsupportedCoordinates("coordinate too large".into()))
                })
                .collect()
        })
        .collect()
}

/// Parity class in lattice coordinates, for descriptors that are a single lattice.
fn lattice_classes(s: &SetDescriptor, ints: &[Vec<i64>]) -> Option<Vec<u32>> {
    let SetDescriptor::Lattice(l) = s else { return None };
    ints.iter()
        .map(|p| {
            let c = parity_class_int(&l.coordinates(p)?);
            Some(c.iter().fold(0u32, |acc, &b| (acc << 1) | b as u32))
        })
        .collect()
}

struct Outcome {
    best: Vec<usize>,
    maxima: Vec<Vec<usize>>,
    nodes: u64,
    exhausted: bool,
}

struct Run<'a> {
    ground: &'a dyn Ground,
    n: usize,
    /// `compat[a]` has bit `b` set when `{a, b}` is valid.
    compat: Vec<Vec<u64>>,
    classes: Option<Vec<u32>>,
    opts: &'a SearchOptions,
    deadline: Option<Instant>,
    /// Best size in the high half, `u32::MAX - branch` in the low half.
    incumbent: AtomicU64,
    next_branch: AtomicUsize,
    nodes: AtomicU64,
    stop: AtomicBool,
    results: Mutex<Vec<(Vec<usize>, Vec<Vec<usize>>)>>,
}

fn has(bits: &[u64], i: usize) -> bool {
    bits[i / 64] >> (i % 64) & 1 == 1
}

impl<'a> Run<'a> {
    fn new(ground: &'a dyn Ground, classes: Option<Vec<u32>>, opts: &'a SearchOptions, start: Instant) -> Run<'a> {
        let n = ground.len();
        let words = n.div_ceil(64);
        let mut compat = vec![vec![0u64; words]; n];
        for a in 0..n {
            for b in a + 1..n {
                if ground.valid(&[a, b]) {
                    compat[a][b / 64] |= 1 << (b % 64);
                    compat[b][a / 64] |= 1 << (a % 64);
                }
            }
        }
        Run {
            ground,
            n,
            compat,
            classes,
            opts,
            deadline: opts.time_limit.map(|t| start + t),
            incumbent: AtomicU64::new(0),
            next_branch: AtomicUsize::new(0),
            nodes: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            results: Mutex::new(Vec::new()),
        }
    }

    fn go(&self) -> Outcome {
        let workers = self.opts.worker_count.min(self.n).max(1);
        std::thread::scope(|scope| {
            for _ in 0..workers {
                scope.spawn(|| self.worker());
            }
        });
        let results = self.results.lock().expect("worker panicked").split_off(0);
        let size = results.iter().map(|r| r.0.len()).max().unwrap_or(0);
        let best = results.iter().filter(|r| r.0.len() == size).map(|r| r.0.clone()).min().unwrap_or_default();
        let mut maxima: Vec<Vec<usize>> = Vec::new();
        if self.opts.report_all_maxima {
            maxima = results.into_iter().flat_map(|r| r.1).filter(|m| m.len() == size).collect();
            maxima.sort();
            maxima.dedup();
        }
        Outcome {
            best,
            maxima,
            nodes: self.nodes.load(Ordering::Relaxed),
            exhausted: !self.stop.load(Ordering::Relaxed),
        }
    }

    fn worker(&self) {
        let mut w = Worker { run: self, best: Vec::new(), maxima: Vec::new(), count: 0 };
        loop {
            if self.stop.load(Ordering::Relaxed) {
                break;
            }
            let b = self.next_branch.fetch_add(1, Ordering::Relaxed);
            if b >= self.n {
                break;
            }
            let cands: Vec<usize> = (b + 1..self.n).filter(|&c| has(&self.compat[b], c)).collect();
            w.descend(b, &mut vec![b], &cands);
        }
        self.nodes.fetch_add(w.count, Ordering::Relaxed);
        self.results.lock().expect("worker panicked").push((w.best, w.maxima));
    }

    fn incumbent(&self) -> (usize, usize) {
        let v = self.incumbent.load(Ordering::Relaxed);
        ((v >> 32) as usize, (u32::MAX - v as u32) as usize)
    }

    fn offer(&self, size: usize, branch: usize) {
        let packed = (size as u64) << 32 | (u32::MAX - branch as u32) as u64;
        self.incumbent.fetch_max(packed, Ordering::Relaxed);
        if self.opts.max_size_hint.is_some_and(|h| size >= h) {
            self.stop.store(true, Ordering::Relaxed);
        }
    }

    fn prune(&self, bound: usize, branch: usize) -> bool {
        let (size, owner) = self.incumbent();
        if self.opts.report_all_maxima {
            bound < size
        } else {
            bound < size || (bound == size && owner <= branch)
        }
    }

    fn bound(&self, current: &[usize], cands: &[usize]) -> usize {
        let mut colors: Vec<Vec<usize>> = Vec::new();
        for &c in cands {
            match colors.iter_mut().find(|class| class.iter().all(|&x| !has(&self.compat[c], x))) {
                Some(class) => class.push(c),
                None => colors.push(vec![c]),
            }
        }
        let mut extra = colors.len();
        if let Some(cls) = &self.classes {
            let used: std::collections::BTreeSet<u32> = current.iter().map(|&i| cls[i]).collect();
            let free: std::collections::BTreeSet<u32> =
                cands.iter().map(|&i| cls[i]).filter(|c| !used.contains(c)).collect();
            extra = extra.min(free.len());
        }
        current.len() + extra
    }
}

struct Worker<'r, 'a> {
    run: &'r Run<'a>,
    best: Vec<usize>,
    maxima: Vec<Vec<usize>>,
    count: u64,
}

impl Worker<'_, '_> {
    fn record(&mut self, current: &[usize], branch: usize) {
        let run = self.run;
        if current.len() > self.best.len() {
            self.best = current.to_vec();
            self.maxima.clear();
            run.offer(current.len(), branch);
        }
        if run.opts.report_all_maxima && current.len() == self.best.len() {
            self.maxima.push(current.to_vec());
        }
    }

    fn tick(&mut self) -> bool {
        self.count += 1;
        let run = self.run;
        if self.count % 1024 == 0 {
            if let Some(t) = run.deadline {
                if Instant::now() >= t {
                    run.stop.store(true, Ordering::Relaxed);
                }
            }
        }
        run.stop.load(Ordering::Relaxed)
    }

    fn descend(&mut self, branch: usize, current: &mut Vec<usize>, cands: &[usize]) {
        if self.tick() {
            return;
        }
        self.record(current, branch);
        let run = self.run;
        if cands.is_empty() || run.prune(run.bound(current, cands), branch) {
            return;
        }
        for (k, &c) in cands.iter().enumerate() {
            if run.prune(run.bound(current, &cands[k..]), branch) {
                return;
            }
            current.push(c);
            let next: Vec<usize> = cands[k + 1..]
                .iter()
                .copied()
                .filter(|&x| has(&run.compat[c], x) && {
                    current.push(x);
                    let ok = run.ground.valid(current);
                    current.pop();
                    ok
                })
                .collect();
            self.descend(branch, current, &next);
            current.pop();
            if run.stop.load(Ordering::Relaxed) {
                return;
            }
        }
    }
}
