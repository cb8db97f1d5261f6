use std::time::Duration;

use helly::exactgeom::Point;
use helly::pointsets::{Lattice, SetDescriptor, Window};
use helly::search::{helly_oracle_hoffman, helly_oracle_vertex, max_vertex_polytope, SearchOptions};

fn search(s: &SetDescriptor, w: Window) -> helly::search::SearchResult {
    max_vertex_polytope(s, &SearchOptions::new(w)).unwrap()
}

#[test]
fn integer_space_unit_cube() {
    let r = search(&SetDescriptor::integer_lattice(3), Window::cube(3, 0, 2));
    assert!(r.exhausted);
    assert_eq!(r.best_size, 8);
    let pts: Vec<Vec<i64>> = r.best.configuration.points.iter().map(|p| p.to_i64().unwrap()).collect();
    assert!(pts.iter().all(|p| p.iter().all(|&x| x == 0 || x == 1)));
}

#[test]
fn plane_minus_even_lattice() {
    let s = SetDescriptor::LatticeDifference { d: 2, removed: vec![Lattice::scaled(2, 2)] };
    let r = search(&s, Window::cube(2, -3, 4));
    assert!(r.exhausted);
    assert_eq!(r.best_size, 6);
    assert!(r.best.verdict.is_valid());
}

#[test]
fn convex_heptagon() {
    let pts = [(0, 0), (3, 0), (5, 2), (5, 4), (3, 6), (0, 5), (-1, 2)];
    let s = SetDescriptor::ExplicitFinite { points: pts.iter().map(|&(x, y)| Point::integer(&[x, y])).collect() };
    let r = search(&s, Window::new(vec![-1, 0], vec![5, 6]).unwrap());
    assert_eq!(r.best_size, 7);
    assert_eq!(helly_oracle_vertex(&s).unwrap(), 7);
    assert_eq!(helly_oracle_hoffman(&s).unwrap(), 7);
}

#[test]
fn prime_grid_small_window() {
    let s = SetDescriptor::PrimeGrid { d: 2 };
    let mut o = SearchOptions::new(Window::cube(2, 0, 30));
    o.time_limit = Some(Duration::from_secs(60));
    let r = max_vertex_polytope(&s, &o).unwrap();
    eprintln!("primes < 31: {} exhausted={} nodes={} {:?}", r.best_size, r.exhausted, r.nodes_explored, r.elapsed);
    assert!(r.best_size >= 6);
}
