//! Planarizations read off polyline drawings with integer coordinates.

use std::cmp::Ordering;

use crate::drawing::Planarization;
use crate::error::{Error, Result};
use crate::graph::{EdgeId, WeightedMultigraph};

pub type Point = (i64, i64);

/// Vertex positions plus interior bend points for each edge, listed from
/// `u` to `v`.
#[derive(Clone, Debug, Default)]
pub struct PolylineDrawing {
    pub pos: Vec<Point>,
    pub bends: Vec<Vec<Point>>,
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    (b.0 as i128 - ax) * (c.1 as i128 - ay) - (b.1 as i128 - ay) * (c.0 as i128 - ax)
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Position along a polyline: segment index and a fraction `num / den` in
/// `[0, 1]` with `den > 0`.
#[derive(Clone, Copy, Debug)]
struct Param {
    seg: usize,
    num: i128,
    den: i128,
}

impl Param {
    fn cmp(&self, o: &Param) -> Ordering {
        self.seg.cmp(&o.seg).then((self.num * o.den).cmp(&(o.num * self.den)))
    }
}

enum Meet {
    None,
    Cross(Param, Param),
    Touch(Point),
    Overlap,
}

fn meet(a: Point, b: Point, c: Point, d: Point) -> Meet {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 == 0 && o2 == 0 {
        let ends: Vec<Point> = [c, d].into_iter().filter(|&p| on_segment(p, a, b)).chain([a, b].into_iter().filter(|&p| on_segment(p, c, d))).collect();
        return match ends.as_slice() {
            [] => Meet::None,
            [p, rest @ ..] if rest.iter().all(|q| q == p) => Meet::Touch(*p),
            _ => Meet::Overlap,
        };
    }
    if (o1 > 0 && o2 < 0 || o1 < 0 && o2 > 0) && (o3 > 0 && o4 < 0 || o3 < 0 && o4 > 0) {
        let den = o3 - o4;
        let den2 = o1 - o2;
        let (t, u) = (Param { seg: 0, num: o3, den }, Param { seg: 0, num: o1, den: den2 });
        let fix = |p: Param| if p.den < 0 { Param { seg: 0, num: -p.num, den: -p.den } } else { p };
        return Meet::Cross(fix(t), fix(u));
    }
    for p in [c, d] {
        if on_segment(p, a, b) {
            return Meet::Touch(p);
        }
    }
    for p in [a, b] {
        if on_segment(p, c, d) {
            return Meet::Touch(p);
        }
    }
    Meet::None
}

impl PolylineDrawing {
    pub fn new(g: &WeightedMultigraph) -> Self {
        PolylineDrawing { pos: vec![(0, 0); g.vertex_count()], bends: vec![Vec::new(); g.edge_count()] }
    }

    fn polyline(&self, g: &WeightedMultigraph, e: EdgeId) -> Vec<Point> {
        let ed = g.edge(e);
        let mut pts = vec![self.pos[ed.u]];
        pts.extend(&self.bends[e]);
        pts.push(self.pos[ed.v]);
        pts
    }

    /// Crossing lists of the drawing. Fails on any contact that is not a
    /// proper crossing or a shared endpoint, and on a pair of edges that
    /// cross more than once.
    pub fn planarize(&self, g: &WeightedMultigraph) -> Result<Planarization> {
        let m = g.edge_count();
        if self.pos.len() != g.vertex_count() || self.bends.len() != m {
            return Err(Error::Invalid("drawing does not match the graph".into()));
        }
        let lines: Vec<Vec<Point>> = (0..m).map(|e| self.polyline(g, e)).collect();
        let boxes: Vec<(Point, Point)> = lines
            .iter()
            .map(|l| {
                let xs = l.iter().map(|p| p.0);
                let ys = l.iter().map(|p| p.1);
                ((xs.clone().min().unwrap(), ys.clone().min().unwrap()), (xs.max().unwrap(), ys.max().unwrap()))
            })
            .collect();
        let mut found: Vec<Vec<(Param, EdgeId)>> = vec![Vec::new(); m];
        for e in 0..m {
            for f in e + 1..m {
                let (be, bf) = (boxes[e], boxes[f]);
                if be.1 .0 < bf.0 .0 || bf.1 .0 < be.0 .0 || be.1 .1 < bf.0 .1 || bf.1 .1 < be.0 .1 {
                    continue;
                }
                let shared: Vec<Point> = {
                    let (x, y) = (g.edge(e), g.edge(f));
                    [x.u, x.v].into_iter().filter(|v| y.touches(*v)).map(|v| self.pos[v]).collect()
                };
                let mut count = 0;
                for (i, s) in lines[e].windows(2).enumerate() {
                    for (j, t) in lines[f].windows(2).enumerate() {
                        match meet(s[0], s[1], t[0], t[1]) {
                            Meet::None => {}
                            Meet::Cross(a, b) => {
                                count += 1;
                                found[e].push((Param { seg: i, ..a }, f));
                                found[f].push((Param { seg: j, ..b }, e));
                            }
                            Meet::Touch(p) if shared.contains(&p) => {}
                            Meet::Touch(p) => {
                                return Err(Error::Invalid(format!("edges {e} and {f} touch at {p:?}")));
                            }
                            Meet::Overlap => return Err(Error::Invalid(format!("edges {e} and {f} overlap"))),
                        }
                    }
                }
                if count > 1 {
                    return Err(Error::Invalid(format!("edges {e} and {f} cross {count} times")));
                }
            }
        }
        let crossings = found
            .into_iter()
            .map(|mut l| {
                l.sort_by(|a, b| a.0.cmp(&b.0));
                l.into_iter().map(|(_, f)| f).collect()
            })
            .collect();
        Ok(Planarization { crossings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::OmegaPoly;

    fn graph(edges: &[(usize, usize)], n: usize) -> WeightedMultigraph {
        let mut g = WeightedMultigraph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}")).unwrap();
        }
        for &(u, v) in edges {
            g.add_edge(u, v, OmegaPoly::one()).unwrap();
        }
        g
    }

    #[test]
    fn orders_crossings_along_edges() {
        let g = graph(&[(0, 1), (2, 3), (4, 5)], 6);
        let mut d = PolylineDrawing::new(&g);
        d.pos = vec![(0, 0), (10, 0), (2, -1), (2, 1), (7, 1), (7, -1)];
        let p = d.planarize(&g).unwrap();
        assert_eq!(p.crossings, vec![vec![1, 2], vec![0], vec![0]]);
        d.pos.swap(0, 1);
        assert_eq!(d.planarize(&g).unwrap().crossings[0], vec![2, 1]);
    }

    #[test]
    fn bends_and_degeneracies() {
        let g = graph(&[(0, 1), (2, 3)], 4);
        let mut d = PolylineDrawing::new(&g);
        d.pos = vec![(0, 0), (10, 0), (5, -5), (6, -5)];
        d.bends[1] = vec![(5, 5), (6, 5)];
        assert!(d.planarize(&g).is_err());
        d.bends[1] = vec![(5, 5)];
        d.pos[3] = (6, 5);
        assert_eq!(d.planarize(&g).unwrap().crossing_count(), 1);
        d.bends[1] = vec![(5, 0)];
        assert!(d.planarize(&g).is_err());
    }
}
