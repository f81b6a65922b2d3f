use proptest::prelude::*;
use steenrod::chains::{coboundary, differential, tensor_boundary};
use steenrod::cohomology::{ClassOf, Cohomology};
use steenrod::diagonal::{h_fast, sq};
use steenrod::library::builtin;
use steenrod::simplicial::Op;
use steenrod::{Chain, Cochain, OperatorWord, SimplicialObject, SimplicialSet, StandardSimplex, Tensor, TensorChain};

const SPACES: &[&str] = &["sphere-2-minimal", "rp2", "torus", "klein-bottle", "suspension-of-rp2"];

/// Valid op sequences starting at dimension `m`, as raw index choices.
fn ops_strategy() -> impl Strategy<Value = (usize, Vec<(bool, usize)>)> {
    (2usize..8).prop_flat_map(|m| (Just(m), prop::collection::vec((any::<bool>(), 0usize..16), 0..10)))
}

fn realize(m: usize, raw: &[(bool, usize)]) -> Vec<Op> {
    let mut dim = m;
    let mut ops = Vec::new();
    for &(face, k) in raw {
        if face && dim > 0 {
            ops.push(Op::Face(k % (dim + 1)));
            dim -= 1;
        } else if dim < 10 {
            ops.push(Op::Degeneracy(k % (dim + 1)));
            dim += 1;
        }
    }
    ops
}

fn apply_in_order(delta: &StandardSimplex, ops: &[Op]) -> steenrod::SimplexRef {
    ops.iter().fold(delta.top(), |x, op| match *op {
        Op::Face(k) => delta.face(k, &x),
        Op::Degeneracy(k) => delta.degeneracy(k, &x),
    })
}

fn pick<T: Copy>(xs: &[T], seed: usize) -> Option<T> {
    (!xs.is_empty()).then(|| xs[seed % xs.len()])
}

fn random_cochain(x: &SimplicialSet, degree: usize, bits: &[bool]) -> Cochain {
    let mut c = Cochain::zero(degree);
    for (&g, &b) in x.generators(degree).iter().zip(bits.iter().cycle()) {
        if b {
            c.toggle(g);
        }
    }
    c
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_word_acts_like_the_sequence((m, raw) in ops_strategy()) {
        let ops = realize(m, &raw);
        let sub = StandardSimplex::new(m).unwrap();
        let w = OperatorWord::normalize(&ops, m).unwrap();
        prop_assert_eq!(w.apply(&sub, &sub.top()), apply_in_order(&sub, &ops));
        prop_assert_eq!(OperatorWord::normalize(&w.to_ops(), m).unwrap(), w);
    }

    #[test]
    fn face_only_words_delete_their_vertices(m in 1usize..12, mask in any::<u16>()) {
        let delta = StandardSimplex::new(m).unwrap();
        let full = (1u64 << (m + 1)) - 1;
        let deleted = (mask as u64) & full;
        prop_assume!(deleted != full);
        let w = OperatorWord::deleting(m, (0..=m).filter(|v| deleted >> v & 1 == 1)).unwrap();
        prop_assert_eq!(w.apply(&delta, &delta.top()), delta.simplex(full & !deleted));
    }

    #[test]
    fn boundary_squares_to_zero(space in 0..SPACES.len(), seed in any::<usize>(), degs in prop::collection::vec(0usize..4, 0..3)) {
        let x = builtin(SPACES[space]).unwrap();
        let m = 1 + seed % x.top_dim();
        let g = pick(x.generators(m), seed);
        prop_assume!(g.is_some());
        let mut s = x.simplex(g.unwrap());
        for d in degs {
            s = s.degenerate(d % (s.dim() + 1)).unwrap();
        }
        let c = Chain::single(s, 1i64);
        prop_assert!(differential(&x, &differential(&x, &c)).is_zero());
    }

    #[test]
    fn coboundary_squares_to_zero(space in 0..SPACES.len(), p in 0usize..2, bits in prop::collection::vec(any::<bool>(), 1..40)) {
        let x = builtin(SPACES[space]).unwrap();
        let c = random_cochain(&x, p, &bits);
        prop_assert!(coboundary(&x, &coboundary(&x, &c)).is_zero());
    }

    #[test]
    fn tensor_boundary_squares_to_zero(a in any::<usize>(), b in any::<usize>(), p in 0usize..3, q in 0usize..3) {
        let x = builtin("rp2").unwrap();
        let y = builtin("torus").unwrap();
        let t = Tensor::pair(x.simplex(pick(x.generators(p), a).unwrap()), y.simplex(pick(y.generators(q), b).unwrap()));
        let c = TensorChain::single(t, 1i64);
        let spaces = [&x, &y];
        prop_assert!(tensor_boundary(&spaces, &tensor_boundary(&spaces, &c)).is_zero());
    }

    #[test]
    fn higher_diagonal_raises_degree_by_n(n in 0usize..4, a in any::<usize>(), b in any::<usize>()) {
        let x = builtin("torus").unwrap();
        let m = 1 + a % 2;
        let s = x.simplex(pick(x.generators(m), a).unwrap());
        let t = x.simplex(pick(x.generators(m), b).unwrap());
        let h = h_fast::<_, i64>(n, &x, &x, &s, &t);
        for (tensor, _) in h.iter() {
            let deg: usize = tensor.factors().iter().map(|f| f.dim()).sum();
            prop_assert_eq!(deg, m + n);
        }
    }

    #[test]
    fn squares_ignore_the_representative(space in 0..SPACES.len(), i in 0usize..3, class_bits in any::<u8>(), shift in prop::collection::vec(any::<bool>(), 1..40)) {
        let x = builtin(SPACES[space]).unwrap();
        let mut h = Cohomology::new(&x);
        for j in 1..=x.top_dim() {
            let n = h.basis(j).dim();
            if n == 0 || i > j {
                continue;
            }
            let a: Vec<bool> = (0..n).map(|k| class_bits >> (k % 8) & 1 == 1).collect();
            let rep = h.basis(j).representative(&a).unwrap();
            let other = rep.add(&coboundary(&x, &random_cochain(&x, j - 1, &shift))).unwrap();
            let expected = h.sq(i, j, &a).unwrap();
            let got = h.basis(i + j).class_of(&x, &sq(&x, i, &other)).unwrap();
            prop_assert_eq!(got, ClassOf::Class(expected));
        }
    }
}
