//! Shared corpus for the integration tests: generated families, random
//! move walks and frozen fixtures.
#![allow(dead_code)]

use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use z2norm::cohomology::h1_z2;
use z2norm::flips::{edge_flip, flippable_edges, three_two, two_three};
use z2norm::generators::{layered_solid_torus, twisted_layered_loop};
use z2norm::tri::{check_closed_orientable, compute_skeleton, parse_triangulation, Perm, Triangulation};

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join("fixtures")
}

/// Frozen fixtures, sorted by file name.
pub fn fixtures() -> Vec<(String, Triangulation)> {
    let mut paths: Vec<_> = std::fs::read_dir(fixture_dir())
        .expect("fixture directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "tri"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p).unwrap();
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let t = parse_triangulation(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
            (name, t)
        })
        .collect()
}

/// Whether `t` is a closed orientable triangulation with manifold links.
pub fn is_closed_manifold(t: &Triangulation) -> bool {
    check_closed_orientable(t).is_ok()
        && compute_skeleton(t).is_ok_and(|s| s.links_are_manifold() && s.euler_characteristic() == 0)
}

/// One random 2-3, 3-2 or 4-4 move, if a legal one is found.
pub fn random_move(t: &Triangulation, rng: &mut ChaCha8Rng) -> Option<Triangulation> {
    let s = compute_skeleton(t).ok()?;
    for _ in 0..20 {
        let next = match rng.gen_range(0..3) {
            0 => {
                let tet = rng.gen_range(0..t.tet_count());
                let face = rng.gen_range(0..4u8);
                two_three(t, tet, face).ok().map(|r| r.triangulation)
            }
            1 => {
                let edges: Vec<usize> = (0..s.edge_count()).filter(|&e| s.degree(e) == 3).collect();
                let &e = edges.choose(rng)?;
                three_two(t, &s, e).and_then(Result::ok).map(|r| r.triangulation)
            }
            _ => {
                let sites = flippable_edges(t, &s);
                let site = sites.choose(rng)?;
                edge_flip(t, site, rng.gen_range(0..2)).ok().map(|r| r.triangulation)
            }
        };
        if let Some(n) = next.filter(is_closed_manifold) {
            return Some(n);
        }
    }
    None
}

/// A walk of `steps` random moves from `base`, capped at `max_tets`.
pub fn random_walk(base: &Triangulation, seed: u64, steps: usize, max_tets: usize) -> Triangulation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut t = base.clone();
    for _ in 0..steps {
        if let Some(n) = random_move(&t, &mut rng) {
            if n.tet_count() <= max_tets {
                t = n;
            }
        }
    }
    t
}

/// Closes every free face of `t` by a random pairing, trying perms until
/// the result is an orientable manifold.
pub fn random_closure(t: &Triangulation, rng: &mut ChaCha8Rng) -> Option<Triangulation> {
    let mut free = t.boundary_faces();
    if free.len() % 2 == 1 {
        return None;
    }
    free.shuffle(rng);
    let mut out = t.clone();
    for pair in free.chunks(2) {
        let ((a, fa), (b, fb)) = (pair[0], pair[1]);
        let perms: Vec<Perm> = Perm::all().filter(|p| p.apply(fa) == fb).collect();
        let p = *perms.choose(rng).unwrap();
        out.glue(a, fa, b, p).ok()?;
    }
    is_closed_manifold(&out).then_some(out)
}

pub fn twisted_loops(ks: impl IntoIterator<Item = usize>) -> Vec<(String, Triangulation)> {
    ks.into_iter().map(|k| (format!("loop-{k}"), twisted_layered_loop(k).unwrap())).collect()
}

/// Layered solid tori from every choice sequence up to the given length.
pub fn lst_builds(max_len: usize) -> Vec<(Vec<u8>, Triangulation)> {
    let mut seqs: Vec<Vec<u8>> = vec![vec![]];
    let mut out = Vec::new();
    for _ in 0..=max_len {
        let mut next = Vec::new();
        for s in seqs {
            out.push((s.clone(), layered_solid_torus(&s).unwrap().triangulation));
            for c in 0..3 {
                let mut n = s.clone();
                n.push(c);
                next.push(n);
            }
        }
        seqs = next;
    }
    out
}

/// Every closed input: twisted loops, random move walks from them and
/// the fixtures.
pub fn closed_corpus() -> Vec<(String, Triangulation)> {
    let mut out = twisted_loops([1, 2, 3, 4, 5, 6, 7, 8, 10]);
    for (i, k) in [2usize, 3, 4, 6].into_iter().enumerate() {
        let base = twisted_layered_loop(k).unwrap();
        for seed in 0..4u64 {
            let t = random_walk(&base, 1000 * i as u64 + seed, 12, k + 4);
            out.push((format!("walk-{k}-{seed}"), t));
        }
    }
    out.extend(fixtures());
    out
}

/// The one-vertex inputs with H¹ rank at least two.
pub fn rank2_corpus() -> Vec<(String, Triangulation)> {
    let mut out = closed_corpus();
    out.retain(|(_, t)| {
        let s = compute_skeleton(t).unwrap();
        s.vertex_count() == 1 && h1_z2(&s).rank() >= 2
    });
    out
}

/// The flip argument assumes a minimal triangulation, where the H-even edge
/// of every (II,4) torus is its univalent edge and meets four distinct
/// tetrahedra. Promotion may only give up on inputs that visibly break this.
pub fn breaks_minimality(t: &Triangulation, h: &z2norm::cohomology::Rank2Subgroup) -> bool {
    let s = compute_skeleton(t).unwrap();
    let c = z2norm::colouring::colour_rank2(&s, h, None).unwrap();
    let flagged: Vec<_> = z2norm::lst::find_maximal_lsts(t, &s)
        .into_iter()
        .filter(|d| z2norm::lst::classify_lst(&c, d).unwrap().ii4)
        .collect();
    !flagged.is_empty()
        && flagged.iter().all(|d| {
            let e = d.boundary_edges.iter().find(|e| c.edge_colours[e.edge] == 0 && e.degree == 4).unwrap();
            e.edge != d.univalent_edge || z2norm::flips::flip_site(t, &s, e.edge).is_err()
        })
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

fn join(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    parent[ra.max(rb)] = ra.min(rb);
}

fn gf2_rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c]) else { continue };
        rows.swap(rank, p);
        for r in 0..rows.len() {
            if r != rank && rows[r][c] {
                let pivot = rows[rank].clone();
                for (x, y) in rows[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

const PAIRS: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: u8, b: u8) -> usize {
    let key = (a.min(b), a.max(b));
    PAIRS.iter().position(|&p| p == key).unwrap()
}

/// Z2-rank of H₁ of a closed triangulation from its cellular boundary
/// matrices, built straight from the gluings.
pub fn boundary_matrix_h1_rank(t: &Triangulation) -> usize {
    let n = t.tet_count();
    let mut vp: Vec<usize> = (0..4 * n).collect();
    let mut ep: Vec<usize> = (0..6 * n).collect();
    let mut fp: Vec<usize> = (0..4 * n).collect();
    for tet in 0..n {
        for f in 0..4u8 {
            let g = t.gluing(tet, f).expect("closed");
            let p = g.perm;
            join(&mut fp, 4 * tet + f as usize, 4 * g.tet + p.apply(f) as usize);
            let others: Vec<u8> = (0..4).filter(|&v| v != f).collect();
            for &v in &others {
                join(&mut vp, 4 * tet + v as usize, 4 * g.tet + p.apply(v) as usize);
            }
            for i in 0..3 {
                for j in i + 1..3 {
                    let (a, b) = (others[i], others[j]);
                    join(&mut ep, 6 * tet + pair_index(a, b), 6 * g.tet + pair_index(p.apply(a), p.apply(b)));
                }
            }
        }
    }
    let index = |parent: &mut Vec<usize>| {
        let mut roots: Vec<usize> = (0..parent.len()).map(|x| find(parent, x)).collect();
        let mut uniq = roots.clone();
        uniq.sort_unstable();
        uniq.dedup();
        for r in roots.iter_mut() {
            *r = uniq.binary_search(r).unwrap();
        }
        (roots, uniq.len())
    };
    let (vid, nv) = index(&mut vp);
    let (eid, ne) = index(&mut ep);
    let (fid, nf) = index(&mut fp);
    let mut d1 = vec![vec![false; nv]; ne];
    for tet in 0..n {
        for (k, &(a, b)) in PAIRS.iter().enumerate() {
            let row = &mut d1[eid[6 * tet + k]];
            row.iter_mut().for_each(|x| *x = false);
            row[vid[4 * tet + a as usize]] ^= true;
            row[vid[4 * tet + b as usize]] ^= true;
        }
    }
    let mut d2 = vec![vec![false; ne]; nf];
    for tet in 0..n {
        for f in 0..4u8 {
            let row = &mut d2[fid[4 * tet + f as usize]];
            row.iter_mut().for_each(|x| *x = false);
            let others: Vec<u8> = (0..4).filter(|&v| v != f).collect();
            for i in 0..3 {
                for j in i + 1..3 {
                    row[eid[6 * tet + pair_index(others[i], others[j])]] ^= true;
                }
            }
        }
    }
    ne - gf2_rank(d1) - gf2_rank(d2)
}
