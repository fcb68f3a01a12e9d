//! The generic code paths instantiated at f32.

use clt_bounds::barron::{v_norm, FourierAtomicSpec};
use clt_bounds::be_nonuniform::{relu_bound, RidgeBoundInput};
use clt_bounds::be_uniform::{bentkus_bound, FavorableClass};
use clt_bounds::dist::{UnivariateSpec, VectorSequenceSpec};
use clt_bounds::level_sets::{Activation, FunctionSpec};
use clt_bounds::verify::exact_delta;

#[test]
fn relu_instance_in_f32() {
    let ws = vec![UnivariateSpec::<f32>::rademacher(0.5).unwrap(); 4];
    let b = relu_bound(&RidgeBoundInput::new(ws.clone(), 0.0).unwrap()).unwrap();
    assert_eq!(b.c1, 0.25f32);
    let f = FunctionSpec::ridge(Activation::Relu, vec![1.0f32], 0.0).unwrap();
    let d = exact_delta(&f, &ws).unwrap();
    assert!((d - 0.023_942_28).abs() < 1e-5, "{d}");
}

#[test]
fn moments_and_constants_in_f32() {
    let seq = VectorSequenceSpec::<f32>::from_univariate_sum(&vec![UnivariateSpec::rademacher(0.5).unwrap(); 4]).unwrap();
    assert!((seq.lyapunov_beta().unwrap() - 1.0).abs() < 1e-5);
    assert_eq!(bentkus_bound(&FavorableClass::Convex { d: 16 }, 0.5f32).unwrap().c1, 4.0);
    let cosine = FourierAtomicSpec::<f32>::cosine(vec![1.0, 1.0]).unwrap();
    assert_eq!(v_norm(&cosine, 3).unwrap(), 8.0);
}
