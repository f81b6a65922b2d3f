use steenrod::cohomology::{Cohomology, Gf2Matrix};
use steenrod::contraction::{Cell, CellChain, Contraction};
use steenrod::diagonal::{big_d, sq_indices, term_count, theorem_indices, Mode};
use steenrod::library::builtin;
use steenrod::{ProductSimplex, SimplicialSet, Tensor, TensorChain};

fn gen(x: &SimplicialSet, name: &str) -> steenrod::SimplexRef {
    x.simplex(x.find(name).unwrap())
}

#[test]
fn cup_one_diagonal_on_a_triangle() {
    let x = builtin("rp2").unwrap();
    let t = gen(&x, "1,2,4");
    let expected: TensorChain<i64> = [
        (Tensor::pair(gen(&x, "1,4"), t), 1),
        (Tensor::pair(t, gen(&x, "1,2")), -1),
        (Tensor::pair(t, gen(&x, "2,4")), -1),
    ]
    .into_iter()
    .collect();
    assert_eq!(big_d::<i64>(1, &x, &t, Mode::Fast), expected);
    assert_eq!(big_d::<i64>(1, &x, &t, Mode::Slow), expected);
}

#[test]
fn shih_homotopy_on_the_square() {
    let x = builtin("interval").unwrap();
    let (v0, v1, e) = (gen(&x, "0"), gen(&x, "1"), gen(&x, "0,1"));
    let c = Contraction::<i64>::eilenberg_zilber(&[&x, &x]).unwrap();
    let cell = |a: steenrod::SimplexRef, b: steenrod::SimplexRef| Cell::new([ProductSimplex::new([a, b])]);
    let square = CellChain::single(cell(e, e), 1i64);
    let s0 = e.degenerate(0).unwrap();
    let s1 = e.degenerate(1).unwrap();
    assert_eq!(c.phi(&square), CellChain::single(cell(s0, s1), 1));

    // φd + dφ = gf - 1 on the nondegenerate 1-simplex of I × I
    let mut lhs = c.phi(&c.big().differential(&square));
    lhs.add_assign(&c.big().differential(&c.phi(&square)));
    let gf: CellChain<i64> =
        [(cell(v0.degenerate(0).unwrap(), e), 1), (cell(e, v1.degenerate(0).unwrap()), 1)].into_iter().collect();
    assert_eq!(c.g(&c.f(&square)), gf);
    let mut expected = gf.clone();
    expected.sub_assign(&square);
    assert_eq!(lhs, expected);
}

fn sq_matrix(name: &str, i: usize, j: usize) -> Gf2Matrix {
    let x = builtin(name).unwrap();
    let mut h = Cohomology::new(&x);
    h.sq_matrix(i, j).unwrap()
}

#[test]
fn first_squares_detect_orientability() {
    assert_eq!(sq_matrix("rp2", 1, 1).rank(), 1);
    assert_eq!(sq_matrix("klein-bottle", 1, 1).rank(), 1);
    assert_eq!(sq_matrix("torus", 1, 1).rank(), 0);
    assert_eq!(sq_matrix("sphere-2-boundary", 0, 2).rank(), 1);
}

#[test]
fn suspension_commutes_with_squares() {
    assert_eq!(sq_matrix("suspension-of-rp2", 1, 2).rank(), 1);
    assert_eq!(sq_matrix("suspension-of-rp2", 2, 2).rank(), 0);
}

#[test]
fn torus_cup_products() {
    let x = builtin("torus").unwrap();
    let mut h = Cohomology::new(&x);
    let (a, b) = (vec![true, false], vec![false, true]);
    assert_eq!(h.cup(1, &a, 1, &a).unwrap(), vec![false]);
    assert_eq!(h.cup(1, &b, 1, &b).unwrap(), vec![false]);
    assert_eq!(h.cup(1, &a, 1, &b).unwrap(), vec![true]);
}

#[test]
fn square_indices_are_the_balanced_diagonal_terms() {
    for i in 0..=5usize {
        for j in i..=i + 4 {
            let (n, m) = (j - i, i + j);
            let mut balanced: Vec<Vec<usize>> = theorem_indices(n, m)
                .into_iter()
                .filter(|ix| {
                    let (w1, w2) = ix.words(m);
                    w1.face_count() == i && w2.face_count() == i
                })
                .map(|ix| ix.entries().to_vec())
                .collect();
            let mut closed: Vec<Vec<usize>> = sq_indices(i, j).into_iter().map(|ix| ix.entries().to_vec()).collect();
            balanced.sort();
            closed.sort();
            assert_eq!(closed, balanced, "i = {i}, j = {j}");
        }
    }
}

#[test]
fn summand_counts() {
    let counts: Vec<u64> = (0..=3).map(|k| term_count(3, 3 + k).summands).collect();
    assert_eq!(counts, vec![1, 4, 16, 40]);
    assert_eq!(term_count(3, 5).face_ops, 96);
    assert_eq!(term_count(2, 1).summands, 0);
}
