//! Small named complexes used throughout the tests, benchmarks and the
//! shipped `fixtures/` directory.

use crate::complex::SimplicialComplex;

fn build(facets: &[&[u32]]) -> SimplicialComplex {
    SimplicialComplex::from_facets(facets.iter().map(|f| f.iter().copied()))
        .expect("fixture facets are valid")
}

/// Full 2-simplex on {0,1,2}.
pub fn triangle() -> SimplicialComplex {
    build(&[&[0, 1, 2]])
}

/// Hollow triangle, the smallest non-strongly-collapsible complex.
pub fn boundary_triangle() -> SimplicialComplex {
    build(&[&[0, 1], &[1, 2], &[0, 2]])
}

/// Path 0 - 1 - 2.
pub fn path2() -> SimplicialComplex {
    build(&[&[0, 1], &[1, 2]])
}

/// Two triangles glued along the edge {1,2}.
pub fn diamond() -> SimplicialComplex {
    build(&[&[0, 1, 2], &[1, 2, 3]])
}

/// Six vertices with an isolated point, seven edges and one triangle.
pub fn example_six_vertices() -> SimplicialComplex {
    build(&[&[0], &[1, 2], &[1, 3], &[1, 4], &[2, 3], &[3, 4, 5]])
}

pub fn tetrahedron() -> SimplicialComplex {
    build(&[&[0, 1, 2, 3]])
}

/// Two triangles sharing the vertex 2.
pub fn bowtie() -> SimplicialComplex {
    build(&[&[0, 1, 2], &[2, 3, 4]])
}

/// Disc triangulation that is collapsible but has no dominated vertex: the
/// octahedron with the face {0,1,2} removed. Its boundary is the 3-cycle
/// 0 - 1 - 2.
pub fn disc_d() -> SimplicialComplex {
    build(&[
        &[0, 1, 5],
        &[0, 2, 4],
        &[0, 4, 5],
        &[1, 2, 3],
        &[1, 3, 5],
        &[2, 3, 4],
        &[3, 4, 5],
    ])
}

/// Clique complex of [`disc_d`]: the octahedral 2-sphere.
pub fn sphere_d_prime() -> SimplicialComplex {
    disc_d().clique_complex()
}

/// Six-vertex annulus between the triangles 0-1-2 and 3-4-5.
pub fn annulus() -> SimplicialComplex {
    build(&[
        &[0, 1, 3],
        &[1, 3, 4],
        &[1, 2, 4],
        &[2, 4, 5],
        &[0, 2, 5],
        &[0, 3, 5],
    ])
}

/// Five-vertex Möbius strip.
pub fn mobius() -> SimplicialComplex {
    build(&[&[0, 1, 2], &[1, 2, 3], &[2, 3, 4], &[0, 3, 4], &[0, 1, 4]])
}

/// Every fixture with its name.
pub fn all() -> Vec<(&'static str, SimplicialComplex)> {
    vec![
        ("triangle", triangle()),
        ("boundary_triangle", boundary_triangle()),
        ("path2", path2()),
        ("diamond", diamond()),
        ("example_six_vertices", example_six_vertices()),
        ("tetrahedron", tetrahedron()),
        ("bowtie", bowtie()),
        ("disc_d", disc_d()),
        ("sphere_d_prime", sphere_d_prime()),
        ("annulus", annulus()),
        ("mobius", mobius()),
    ]
}

pub fn by_name(name: &str) -> Option<SimplicialComplex> {
    all().into_iter().find(|(n, _)| *n == name).map(|(_, k)| k)
}
