use super::{Perm, Triangulation};

/// A combinatorial isomorphism: tetrahedron `i` of the source maps to
/// `tet_map[i]`, with vertex `v` going to `vertex_maps[i].apply(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    pub tet_map: Vec<usize>,
    pub vertex_maps: Vec<Perm>,
}

impl Isomorphism {
    /// Checks that the map is a bijection commuting with all gluings.
    pub fn verify(&self, a: &Triangulation, b: &Triangulation) -> bool {
        let n = a.tet_count();
        if b.tet_count() != n || self.tet_map.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.tet_map {
            if y >= n || std::mem::replace(&mut hit[y], true) {
                return false;
            }
        }
        (0..n).all(|x| {
            let sigma = self.vertex_maps[x];
            (0..4u8).all(|f| {
                match (a.gluing(x, f), b.gluing(self.tet_map[x], sigma.apply(f))) {
                    (None, None) => true,
                    (Some(g), Some(h)) => {
                        h.tet == self.tet_map[g.tet]
                            && h.perm.compose(sigma) == self.vertex_maps[g.tet].compose(g.perm)
                    }
                    _ => false,
                }
            })
        })
    }
}

/// Tries to extend `anchor -> (target, perm)` over the component of `a`
/// containing `anchor`, writing into `map`. Returns the tetrahedra assigned.
fn extend(
    a: &Triangulation,
    b: &Triangulation,
    anchor: usize,
    target: usize,
    perm: Perm,
    map: &mut [Option<(usize, Perm)>],
    used: &mut [bool],
) -> Option<Vec<usize>> {
    let mut assigned = vec![anchor];
    map[anchor] = Some((target, perm));
    used[target] = true;
    let mut head = 0;
    let ok = 'bfs: loop {
        if head == assigned.len() {
            break true;
        }
        let x = assigned[head];
        head += 1;
        let (y, sigma) = map[x].unwrap();
        for f in 0..4u8 {
            match (a.gluing(x, f), b.gluing(y, sigma.apply(f))) {
                (None, None) => {}
                (Some(g), Some(h)) => {
                    let want = h.perm.compose(sigma).compose(g.perm.inverse());
                    match map[g.tet] {
                        Some((y2, s2)) => {
                            if y2 != h.tet || s2 != want {
                                break 'bfs false;
                            }
                        }
                        None => {
                            if used[h.tet] {
                                break 'bfs false;
                            }
                            map[g.tet] = Some((h.tet, want));
                            used[h.tet] = true;
                            assigned.push(g.tet);
                        }
                    }
                }
                _ => break 'bfs false,
            }
        }
    };
    if ok {
        Some(assigned)
    } else {
        for &x in &assigned {
            if let Some((y, _)) = map[x].take() {
                used[y] = false;
            }
        }
        None
    }
}

/// Anchored breadth-first search over all `24 * tet_count` anchor choices,
/// component by component.
pub fn are_isomorphic(a: &Triangulation, b: &Triangulation) -> Option<Isomorphism> {
    let n = a.tet_count();
    if b.tet_count() != n {
        return None;
    }
    let mut map: Vec<Option<(usize, Perm)>> = vec![None; n];
    let mut used = vec![false; n];
    for comp in a.components() {
        let anchor = comp[0];
        let found = (0..n).any(|y| {
            !used[y] && Perm::all().any(|p| extend(a, b, anchor, y, p, &mut map, &mut used).is_some())
        });
        if !found {
            return None;
        }
    }
    let (tet_map, vertex_maps) = map.into_iter().map(|m| m.unwrap()).unzip();
    Some(Isomorphism { tet_map, vertex_maps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Triangulation {
        let mut t = Triangulation::with_tets(3);
        t.glue(0, 3, 0, "1230".parse().unwrap()).unwrap();
        t.glue(0, 1, 1, "0132".parse().unwrap()).unwrap();
        t.glue(1, 0, 2, "1023".parse().unwrap()).unwrap();
        t
    }

    #[test]
    fn cyclic_relabelling_is_found() {
        let t = sample();
        let maps = ["1230".parse().unwrap(), Perm::IDENTITY, "2103".parse().unwrap()];
        let r = t.relabelled(&[1, 2, 0], &maps);
        let iso = are_isomorphic(&t, &r).expect("isomorphic");
        assert!(iso.verify(&t, &r));
        assert!(are_isomorphic(&r, &t).is_some());
    }

    #[test]
    fn different_sizes_or_gluings_are_not_isomorphic() {
        let t = sample();
        assert!(are_isomorphic(&t, &Triangulation::with_tets(2)).is_none());
        let mut u = t.clone();
        u.unglue(1, 0);
        assert!(are_isomorphic(&t, &u).is_none());
    }

    #[test]
    fn disconnected_components_match_greedily() {
        let mut t = Triangulation::with_tets(3);
        t.glue(1, 3, 1, "1230".parse().unwrap()).unwrap();
        let mut u = Triangulation::with_tets(3);
        u.glue(2, 3, 2, "1230".parse().unwrap()).unwrap();
        let iso = are_isomorphic(&t, &u).unwrap();
        assert!(iso.verify(&t, &u));
        assert_eq!(iso.tet_map[1], 2);
    }
}
