use super::{TriError, Triangulation};

/// A sign per tetrahedron making every gluing orientation-reversing on the
/// shared face, i.e. `sign(t) * sign(t') * sign(perm) = -1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientationAssignment {
    pub signs: Vec<i8>,
}

/// Propagates signs across gluings. Boundary faces are allowed.
pub fn orientation(t: &Triangulation) -> Result<OrientationAssignment, TriError> {
    let n = t.tet_count();
    let mut signs = vec![0i8; n];
    // gluing through which each tetrahedron was reached
    let mut via: Vec<Option<(usize, u8)>> = vec![None; n];
    for start in 0..n {
        if signs[start] != 0 {
            continue;
        }
        signs[start] = 1;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let tet = queue[head];
            head += 1;
            for f in 0..4u8 {
                let Some(g) = t.gluing(tet, f) else { continue };
                let want = -signs[tet] * g.perm.sign();
                if signs[g.tet] == 0 {
                    signs[g.tet] = want;
                    via[g.tet] = Some((tet, f));
                    queue.push(g.tet);
                } else if signs[g.tet] != want {
                    return Err(TriError::NonOrientable { witness: witness_cycle(t, &via, tet, f) });
                }
            }
        }
    }
    Ok(OrientationAssignment { signs })
}

/// Tree paths from both ends of the offending gluing back to their common
/// ancestor, closed up by the gluing itself.
fn witness_cycle(t: &Triangulation, via: &[Option<(usize, u8)>], tet: usize, face: u8) -> Vec<(usize, u8)> {
    let path_to_root = |mut x: usize| {
        let mut path = vec![x];
        while let Some((p, _)) = via[x] {
            x = p;
            path.push(x);
        }
        path
    };
    let other = t.gluing(tet, face).map(|g| g.tet).unwrap_or(tet);
    let a = path_to_root(tet);
    let b = path_to_root(other);
    let common = a.iter().find(|x| b.contains(x)).copied().unwrap_or(tet);
    let mut cycle = Vec::new();
    for &x in a.iter().take_while(|&&x| x != common) {
        cycle.push(via[x].unwrap());
    }
    cycle.push((tet, face));
    let mut tail: Vec<_> = b.iter().take_while(|&&x| x != common).map(|&x| via[x].unwrap()).collect();
    tail.reverse();
    cycle.extend(tail);
    cycle
}

pub fn check_closed_orientable(t: &Triangulation) -> Result<OrientationAssignment, TriError> {
    if let Some(&(tet, face)) = t.boundary_faces().first() {
        return Err(TriError::NotClosed { tet, face });
    }
    orientation(t)
}
