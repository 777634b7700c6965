//! Exact convex hulls by incremental (beneath-beyond) insertion.
//!
//! Points are scaled to a common integer lattice so that every orientation
//! test is an integer dot product. The boundary is kept as a simplicial
//! complex; coplanar simplices are merged into true facets at the end, and
//! the boundary triangulation is used once to produce exact volumes and the
//! rational facet/ridge measures before it is dropped.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geom::vector::RationalVector;
use crate::linalg;
use crate::rational::{factorial, Rational};

/// A facet of a hull, in the coordinates the hull was computed in.
#[derive(Clone, Debug, PartialEq)]
pub struct Facet {
    /// Primitive integer outward normal (zero outside the chart for lower-dimensional hulls).
    pub normal: RationalVector,
    pub offset: Rational,
    pub vertex_ids: Vec<usize>,
    /// `Vol_{d-1}(F) / |normal|`, computed as `Vol_{d-1}(pi_k F) / |normal_k|`.
    pub omega: Rational,
}

/// Two facets meeting in a (d-2)-face.
#[derive(Clone, Debug, PartialEq)]
pub struct Ridge {
    pub facets: (usize, usize),
    /// `Vol_{d-2}(R) / |a ^ b|` for the facet normals `a`, `b`.
    pub rho: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HullStructure {
    pub ambient_dim: usize,
    pub intrinsic_dim: usize,
    /// Coordinates spanning the chart the facets live in (all coordinates when full-dimensional).
    pub chart: Vec<usize>,
    /// Indices of the extreme points of the input.
    pub vertices: Vec<usize>,
    pub facets: Vec<Facet>,
    pub ridges: Vec<Ridge>,
    /// Ambient volume; zero for lower-dimensional input.
    pub volume: Rational,
}

impl HullStructure {
    pub fn is_full_dimensional(&self) -> bool {
        self.intrinsic_dim == self.ambient_dim
    }

    pub(crate) fn remap_vertices(&mut self, map: &HashMap<usize, usize>) {
        self.vertices = self.vertices.iter().map(|v| map[v]).collect();
        self.vertices.sort_unstable();
        for f in &mut self.facets {
            f.vertex_ids = f.vertex_ids.iter().map(|v| map[v]).collect();
            f.vertex_ids.sort_unstable();
        }
    }
}

/// Convex hull of a nonempty point set of common dimension.
pub fn convex_hull(points: &[RationalVector]) -> Result<HullStructure> {
    let first = points.first().ok_or(Error::Empty)?;
    let d = first.dim();
    if let Some(p) = points.iter().find(|p| p.dim() != d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: p.dim(),
        });
    }

    // Deduplicate, remembering the first original index of each distinct point.
    let mut seen: HashMap<&RationalVector, usize> = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (i, p) in points.iter().enumerate() {
        seen.entry(p).or_insert_with(|| {
            distinct.push(i);
            i
        });
    }
    let coords: Vec<Vec<Rational>> = distinct
        .iter()
        .map(|&i| points[i].coords().to_vec())
        .collect();

    let k = linalg::affine_rank(&coords);
    let chart = if k == d {
        (0..d).collect()
    } else {
        chart_coordinates(&coords)
    };
    let projected: Vec<Vec<Rational>> = coords
        .iter()
        .map(|p| chart.iter().map(|&c| p[c].clone()).collect())
        .collect();

    let local = if k == 0 {
        LocalHull {
            vertices: vec![0],
            facets: Vec::new(),
            ridges: Vec::new(),
            volume: Rational::zero(),
        }
    } else {
        full_hull(&projected)
    };

    let lift = |a: &[BigInt]| {
        let mut v = vec![Rational::zero(); d];
        for (&c, x) in chart.iter().zip(a) {
            v[c] = Rational::from_integer(x.clone());
        }
        RationalVector::raw(v)
    };
    let facets = local
        .facets
        .into_iter()
        .map(|f| Facet {
            normal: lift(&f.normal),
            offset: f.offset,
            vertex_ids: f.vertex_ids.iter().map(|&v| distinct[v]).collect(),
            omega: f.omega,
        })
        .collect();
    Ok(HullStructure {
        ambient_dim: d,
        intrinsic_dim: k,
        chart,
        vertices: local.vertices.iter().map(|&v| distinct[v]).collect(),
        facets,
        ridges: local.ridges,
        volume: if k == d { local.volume } else { Rational::zero() },
    })
}

/// Coordinates on which the projection of the affine hull is injective.
fn chart_coordinates(points: &[Vec<Rational>]) -> Vec<usize> {
    let d = points[0].len();
    let mut chosen: Vec<usize> = Vec::new();
    let diffs: Vec<Vec<Rational>> = points[1..]
        .iter()
        .map(|p| linalg::sub(p, &points[0]))
        .collect();
    let k = linalg::rank(&diffs);
    // Greedy: keep a coordinate if it raises the rank of the restricted difference matrix.
    for c in 0..d {
        if chosen.len() == k {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(c);
        let restricted: Vec<Vec<Rational>> = diffs
            .iter()
            .map(|r| trial.iter().map(|&j| r[j].clone()).collect())
            .collect();
        if linalg::rank(&restricted) == trial.len() {
            chosen = trial;
        }
    }
    chosen
}

struct LocalFacet {
    normal: Vec<BigInt>,
    offset: Rational,
    vertex_ids: Vec<usize>,
    omega: Rational,
}

struct LocalHull {
    vertices: Vec<usize>,
    facets: Vec<LocalFacet>,
    ridges: Vec<Ridge>,
    volume: Rational,
}

struct Simplex {
    verts: Vec<usize>,
    normal: Vec<BigInt>,
    offset: BigInt,
    alive: bool,
}

fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Hull of points whose affine hull is all of R^d (d >= 1).
fn full_hull(points: &[Vec<Rational>]) -> LocalHull {
    let d = points[0].len();
    let lcm = points
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let pts: Vec<Vec<BigInt>> = points
        .iter()
        .map(|p| p.iter().map(|x| (x * &lcm).to_integer()).collect())
        .collect();
    let scale = Rational::from_integer(lcm);

    if d == 1 {
        return segment_hull(&pts, &scale);
    }

    let initial = initial_simplex(points, d);
    let centroid: Vec<BigInt> = (0..d)
        .map(|c| initial.iter().fold(BigInt::zero(), |acc, &i| acc + &pts[i][c]))
        .collect();
    let weight = BigInt::from(d + 1);

    let make = |verts: Vec<usize>| -> Simplex {
        let (mut normal, mut offset) = hyperplane(&pts, &verts);
        if dot_int(&normal, &centroid) - &offset * &weight > BigInt::zero() {
            normal.iter_mut().for_each(|x| *x = -x.clone());
            offset = -offset;
        }
        Simplex {
            verts,
            normal,
            offset,
            alive: true,
        }
    };

    let mut simplices: Vec<Simplex> = (0..=d)
        .map(|skip| {
            let verts: Vec<usize> = initial
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != skip)
                .map(|(_, &v)| v)
                .collect();
            make(sorted(verts))
        })
        .collect();

    let mut order: Vec<usize> = (0..pts.len()).filter(|i| !initial.contains(i)).collect();
    let mut state = 0x5EED_u64 ^ pts.len() as u64;
    for i in (1..order.len()).rev() {
        let j = (splitmix(&mut state) % (i as u64 + 1)) as usize;
        order.swap(i, j);
    }

    for &p in &order {
        let visible: Vec<usize> = simplices
            .iter()
            .enumerate()
            .filter(|(_, s)| s.alive && dot_int(&s.normal, &pts[p]) > s.offset)
            .map(|(i, _)| i)
            .collect();
        if visible.is_empty() {
            continue;
        }
        let mut ridge_count: HashMap<Vec<usize>, usize> = HashMap::new();
        for &f in &visible {
            for skip in 0..d {
                *ridge_count.entry(without(&simplices[f].verts, skip)).or_default() += 1;
            }
            simplices[f].alive = false;
        }
        let mut horizon: Vec<Vec<usize>> = ridge_count
            .into_iter()
            .filter(|&(_, c)| c == 1)
            .map(|(r, _)| r)
            .collect();
        horizon.sort();
        for ridge in horizon {
            let mut verts = ridge;
            verts.push(p);
            simplices.push(make(sorted(verts)));
        }
        if simplices.len() > 64 && simplices.iter().filter(|s| s.alive).count() * 2 < simplices.len()
        {
            simplices.retain(|s| s.alive);
        }
    }
    simplices.retain(|s| s.alive);

    // Merge coplanar simplices into facets, ordered by normal.
    let mut groups: BTreeMap<(Vec<BigInt>, BigInt), Vec<usize>> = BTreeMap::new();
    for (i, s) in simplices.iter().enumerate() {
        groups
            .entry((s.normal.clone(), s.offset.clone()))
            .or_default()
            .push(i);
    }

    let mut point_facets: Vec<Vec<usize>> = vec![Vec::new(); pts.len()];
    let mut facet_points: Vec<Vec<usize>> = Vec::with_capacity(groups.len());
    for (fid, (normal, offset)) in groups.keys().enumerate() {
        let on: Vec<usize> = (0..pts.len())
            .filter(|&p| dot_int(normal, &pts[p]) == *offset)
            .collect();
        for &p in &on {
            point_facets[p].push(fid);
        }
        facet_points.push(on);
    }
    let normals: Vec<Vec<Rational>> = groups.keys().map(|(n, _)| linalg::to_rational(n)).collect();
    let extreme: Vec<bool> = point_facets
        .iter()
        .map(|fs| {
            fs.len() >= d && {
                let rows: Vec<Vec<Rational>> = fs.iter().map(|&f| normals[f].clone()).collect();
                linalg::rank(&rows) == d
            }
        })
        .collect();
    let vertices: Vec<usize> = (0..pts.len()).filter(|&p| extreme[p]).collect();

    // Volume: cone every boundary simplex to the centroid of the initial simplex.
    let mut vol_sum = BigInt::zero();
    for s in &simplices {
        let rows: Vec<Vec<BigInt>> = s
            .verts
            .iter()
            .map(|&v| {
                pts[v]
                    .iter()
                    .zip(&centroid)
                    .map(|(x, c)| x * &weight - c)
                    .collect()
            })
            .collect();
        vol_sum += linalg::det_int(&rows).abs();
    }
    let volume = Rational::new(
        vol_sum,
        num_traits::pow(weight.clone(), d) * factorial(d) * num_traits::pow(scale.numer().clone(), d),
    );

    let facet_list: Vec<(&(Vec<BigInt>, BigInt), &Vec<usize>)> = groups.iter().collect();
    let mut facets = Vec::with_capacity(facet_list.len());
    for (fid, ((normal, offset), members)) in facet_list.iter().enumerate() {
        let k = normal.iter().position(|x| !x.is_zero()).expect("nonzero normal");
        let mut sum = BigInt::zero();
        for &m in members.iter() {
            let verts = &simplices[m].verts;
            let base = &pts[verts[0]];
            let rows: Vec<Vec<BigInt>> = verts[1..]
                .iter()
                .map(|&v| {
                    (0..d)
                        .filter(|&c| c != k)
                        .map(|c| &pts[v][c] - &base[c])
                        .collect()
                })
                .collect();
            sum += linalg::det_int(&rows).abs();
        }
        let denom = factorial(d - 1) * num_traits::pow(scale.numer().clone(), d - 1) * normal[k].abs();
        facets.push(LocalFacet {
            normal: normal.clone(),
            offset: Rational::new(offset.clone(), scale.numer().clone()),
            vertex_ids: facet_points[fid].iter().copied().filter(|&p| extreme[p]).collect(),
            omega: Rational::new(sum, denom),
        });
    }

    let ridges = ridges(&pts, &simplices, &facet_list, &scale, d);
    LocalHull {
        vertices,
        facets,
        ridges,
        volume,
    }
}

fn ridges(
    pts: &[Vec<BigInt>],
    simplices: &[Simplex],
    facet_list: &[(&(Vec<BigInt>, BigInt), &Vec<usize>)],
    scale: &Rational,
    d: usize,
) -> Vec<Ridge> {
    let mut owner: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for (fid, (_, members)) in facet_list.iter().enumerate() {
        for &m in members.iter() {
            for skip in 0..d {
                owner.entry(without(&simplices[m].verts, skip)).or_default().push(fid);
            }
        }
    }
    let mut pieces: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for (face, fs) in owner {
        if fs.len() == 2 && fs[0] != fs[1] {
            let key = (fs[0].min(fs[1]), fs[0].max(fs[1]));
            pieces.entry(key).or_default().push(face);
        }
    }
    pieces
        .into_iter()
        .map(|((f, g), faces)| {
            let a = &facet_list[f].0 .0;
            let b = &facet_list[g].0 .0;
            let (k, l, minor) = (0..d)
                .flat_map(|k| (k + 1..d).map(move |l| (k, l)))
                .map(|(k, l)| (k, l, &a[k] * &b[l] - &a[l] * &b[k]))
                .find(|(_, _, m)| !m.is_zero())
                .expect("adjacent facets have independent normals");
            let mut sum = BigInt::zero();
            for face in &faces {
                let base = &pts[face[0]];
                let rows: Vec<Vec<BigInt>> = face[1..]
                    .iter()
                    .map(|&v| {
                        (0..d)
                            .filter(|&c| c != k && c != l)
                            .map(|c| &pts[v][c] - &base[c])
                            .collect()
                    })
                    .collect();
                sum += linalg::det_int(&rows).abs();
            }
            let denom = factorial(d - 2) * num_traits::pow(scale.numer().clone(), d - 2) * minor.abs();
            Ridge {
                facets: (f, g),
                rho: Rational::new(sum, denom),
            }
        })
        .collect()
}

fn segment_hull(pts: &[Vec<BigInt>], scale: &Rational) -> LocalHull {
    let lo = (0..pts.len()).min_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
    let hi = (0..pts.len()).max_by(|&a, &b| pts[a][0].cmp(&pts[b][0])).unwrap();
    let den = scale.numer().clone();
    let facets = vec![
        LocalFacet {
            normal: vec![BigInt::from(-1)],
            offset: Rational::new(-pts[lo][0].clone(), den.clone()),
            vertex_ids: vec![lo],
            omega: Rational::one(),
        },
        LocalFacet {
            normal: vec![BigInt::one()],
            offset: Rational::new(pts[hi][0].clone(), den.clone()),
            vertex_ids: vec![hi],
            omega: Rational::one(),
        },
    ];
    LocalHull {
        vertices: sorted(vec![lo, hi]),
        facets,
        ridges: Vec::new(),
        volume: Rational::new(&pts[hi][0] - &pts[lo][0], den),
    }
}

fn initial_simplex(points: &[Vec<Rational>], d: usize) -> Vec<usize> {
    let mut chosen = vec![0usize];
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for i in 1..points.len() {
        if chosen.len() == d + 1 {
            break;
        }
        let mut trial = rows.clone();
        trial.push(linalg::sub(&points[i], &points[0]));
        if linalg::rank(&trial) == trial.len() {
            rows = trial;
            chosen.push(i);
        }
    }
    debug_assert_eq!(chosen.len(), d + 1);
    chosen
}

fn hyperplane(pts: &[Vec<BigInt>], verts: &[usize]) -> (Vec<BigInt>, BigInt) {
    let d = pts[0].len();
    let base = &pts[verts[0]];
    let rows: Vec<Vec<BigInt>> = verts[1..]
        .iter()
        .map(|&v| pts[v].iter().zip(base).map(|(x, b)| x - b).collect())
        .collect();
    let normal: Vec<BigInt> = (0..d)
        .map(|j| {
            let minor: Vec<Vec<BigInt>> = rows
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, x)| x.clone())
                        .collect()
                })
                .collect();
            let m = linalg::det_int(&minor);
            if j % 2 == 0 {
                m
            } else {
                -m
            }
        })
        .collect();
    let normal = linalg::primitive_int(normal);
    let offset = dot_int(&normal, base);
    (normal, offset)
}

fn without(verts: &[usize], skip: usize) -> Vec<usize> {
    verts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != skip)
        .map(|(_, &v)| v)
        .collect()
}

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}
