use apollonian::depth::{depth_z, triple_of_z, DEFAULT_MAX_STEPS};
use apollonian::numerics::{CircleForm, ComplexScalar, ProjPoint, Scalar};
use apollonian::packing::{generate_packing, DescartesSeed, GenerateOptions, Quadruple};
use apollonian::render::{render_depth, Mode, Window};
use apollonian::spinor::{spinor_products, TangencySpinor};
use apollonian::symmetry::{
    canonicalize_to_p, generator, generator_coordinate, in_region, Generator, GroupElement, RegionPredicate,
};
use proptest::prelude::*;

fn gen_strategy() -> impl Strategy<Value = Generator> {
    prop::sample::select(Generator::ALL.to_vec())
}

fn word_element(w: &[Generator]) -> GroupElement {
    w.iter().fold(GroupElement::identity(), |e, &g| e.compose(&generator(g)))
}

fn rational_point() -> impl Strategy<Value = ProjPoint> {
    (-40i64..40, 1i64..12, -40i64..40, 1i64..12).prop_map(|(a, b, c, d)| ProjPoint::rational(a, b, c, d))
}

fn rational_circle() -> impl Strategy<Value = CircleForm> {
    (-20i64..20, 1i64..8, -20i64..20, 1i64..8, 1i64..20, 1i64..8).prop_map(|(a, b, c, d, rn, rd)| {
        CircleForm::circle(ComplexScalar::new(Scalar::ratio(a, b), Scalar::ratio(c, d)), Scalar::ratio(rn, rd))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circle_action_composes(c in rational_circle(), g in prop::collection::vec(gen_strategy(), 0..4), h in prop::collection::vec(gen_strategy(), 0..4)) {
        let (g, h) = (word_element(&g), word_element(&h));
        let twice = c.apply(&g).unwrap().apply(&h).unwrap().canonical();
        let once = c.apply(&h.compose(&g)).unwrap().canonical();
        prop_assert_eq!(twice, once);
    }

    #[test]
    fn circle_image_contains_point_images(c in rational_circle(), g in gen_strategy()) {
        let img = c.apply(&generator(g)).unwrap();
        let [a, br, bi, cc] = c.to_f64();
        let (x0, y0, r) = (-br / a, -bi / a, (br * br + bi * bi - a * cc).sqrt() / a.abs());
        for t in [0.1f64, 1.7, 3.9] {
            let p = ProjPoint::from_f64(x0 + r * t.cos(), y0 + r * t.sin());
            prop_assert!(img.contains_point(&generator_coordinate(g, &p), 1e-9));
        }
    }

    #[test]
    fn matrix_and_coordinate_forms_agree(z in rational_point(), g in gen_strategy()) {
        prop_assert_eq!(generator(g).apply(&z), generator_coordinate(g, &z));
    }

    #[test]
    fn inverse_undoes(z in rational_point(), w in prop::collection::vec(gen_strategy(), 1..6)) {
        let e = word_element(&w);
        prop_assert!(e.compose(&e.inverse()).is_identity());
        prop_assert_eq!(e.inverse().apply(&e.apply(&z)), z);
    }

    #[test]
    fn canonical_point_lies_in_p(z in rational_point()) {
        let c = canonicalize_to_p(&z, DEFAULT_MAX_STEPS).unwrap();
        prop_assert!(in_region(RegionPredicate::P, &c.point), "{} -> {}", z, c.point);
        prop_assert_eq!(c.word.apply(&z), c.point);
    }

    #[test]
    fn f_swaps_outer_curvatures(xn in -60i64..60, yn in 1i64..30) {
        let z = ProjPoint::rational(xn, 20, yn, 30);
        let t = triple_of_z(&z).unwrap();
        let f = triple_of_z(&generator_coordinate(Generator::F, &z)).unwrap();
        prop_assert_eq!((&f.a, &f.b, &f.c), (&t.c, &t.b, &t.a));
    }

    #[test]
    fn h_and_f_preserve_depth(xn in -90i64..90, yn in 1i64..32) {
        let z = ProjPoint::rational(xn, 32, yn, 32);
        let d = depth_z(&z, 200).unwrap().depth;
        for g in [Generator::H, Generator::F] {
            prop_assert_eq!(depth_z(&generator_coordinate(g, &z), 200).unwrap().depth, d);
        }
    }

    #[test]
    fn spinor_double_cover(a in -30i64..30, b in -30i64..30, c in -30i64..30, d in -30i64..30) {
        let s = TangencySpinor::new(Scalar::int(a), Scalar::int(b));
        let t = TangencySpinor::new(Scalar::int(c), Scalar::int(d));
        let base = spinor_products(&s, &t);
        prop_assert_eq!(spinor_products(&-&s, &t).c, -&base.c);
        prop_assert_eq!(spinor_products(&s, &-&t).c, -&base.c);
        prop_assert_eq!(spinor_products(&-&s, &-&t), base);
    }

    #[test]
    fn reflection_is_involution(a in -100i64..100, b in -100i64..100, c in -100i64..100, d in -100i64..100) {
        let s = Scalar::int(2) * &(Scalar::int(a) + Scalar::int(b) + Scalar::int(c));
        let once = &s - &Scalar::int(d);
        prop_assert_eq!(&s - &once, Scalar::int(d));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn generated_quadruples_stay_descartes(xn in 1i64..40, xd in 1i64..12, yn in 1i64..11, yd in 12i64..13) {
        let z = ProjPoint::rational(xn, xd, yn, yd);
        let t = triple_of_z(&z).unwrap();
        prop_assume!(!t.b.is_zero());
        let seed = DescartesSeed::from_z(&z).unwrap();
        let p = generate_packing(&seed, &GenerateOptions::levels(3)).unwrap();
        prop_assert!(p.quadruples().all(|q: Quadruple| q.satisfies_descartes()));
        prop_assert!(p.max_tangency_residual() < 1e-9);
    }

    #[test]
    fn raster_symmetric(w in 0.5f64..3.0, width in 2usize..40, height in 2usize..20, mode_web in any::<bool>()) {
        let mode = if mode_web { Mode::Web } else { Mode::Spinor };
        let win = Window::new(-w, w, 0.0, 1.0).unwrap();
        let r = render_depth(win, width, height, 30, mode, 2).unwrap();
        if mode == Mode::Spinor {
            for j in 0..height {
                for i in 0..width {
                    prop_assert_eq!(r.pixel(i, j), r.pixel(width - 1 - i, j));
                    prop_assert_eq!(r.pixel(i, j), r.pixel(i, height - 1 - j));
                }
            }
        }
        prop_assert_eq!(r.pixels.clone(), render_depth(win, width, height, 30, mode, 1).unwrap().pixels);
    }
}
