use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hopf::{make_duality, HopfData};
use crate::linmap::{compose, tensor_all, LinMap};
use crate::qt::{adjoint_action, module_braiding, Module, QTElement};
use crate::space::Shape;

use super::{Expr, Node};

/// Named maps, spaces and modules that expressions may refer to.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    maps: BTreeMap<String, LinMap>,
    spaces: BTreeMap<String, Shape>,
    modules: BTreeMap<String, Module>,
    ambient: Option<(Arc<HopfData>, QTElement)>,
}

impl Environment {
    pub fn new() -> Environment {
        Environment::default()
    }

    /// Spaces `H`, `Hstar`, `k` and maps `m, cm, u, cu, S, Sinv, ev, coev, ad` of `h`.
    pub fn for_algebra(h: &Arc<HopfData>) -> Result<Environment> {
        let mut env = Environment::new();
        let dual = make_duality(h);
        env.bind_space("H", h.shape())?;
        env.bind_space("Hstar", Shape::of(&dual.dual))?;
        env.bind_space("k", Shape::unit())?;
        env.bind("m", h.m.clone())?;
        env.bind("cm", h.cm.clone())?;
        env.bind("u", h.unit.clone())?;
        env.bind("cu", h.counit.clone())?;
        env.bind("S", h.antipode_map()?.clone())?;
        env.bind("Sinv", h.antipode_inverse()?)?;
        env.bind("ev", dual.ev)?;
        env.bind("coev", dual.coev)?;
        env.bind("ad", adjoint_action(h)?)?;
        Ok(env)
    }

    /// Puts a quasitriangular algebra in scope for `braid[..]` and binds its regular module as `V`.
    pub fn with_quasitriangular(mut self, r: QTElement) -> Result<Environment> {
        if r.left.space != r.right.space {
            return Err(Error::Dimension {
                left: r.left.space.name().to_string(),
                right: r.right.space.name().to_string(),
            });
        }
        let h = r.left.clone();
        self.bind_module("V", Module::regular(&h))?;
        self.ambient = Some((h, r));
        Ok(self)
    }

    pub fn bind(&mut self, name: &str, map: LinMap) -> Result<()> {
        if self.maps.contains_key(name) {
            return Err(Error::Schema(format!("map {name:?} is already bound")));
        }
        self.maps.insert(name.to_string(), map);
        Ok(())
    }

    pub fn bind_space(&mut self, name: &str, shape: Shape) -> Result<()> {
        if self.spaces.contains_key(name) {
            return Err(Error::Schema(format!("space {name:?} is already bound")));
        }
        self.spaces.insert(name.to_string(), shape);
        Ok(())
    }

    /// Binds a module and its carrier under the same name.
    pub fn bind_module(&mut self, name: &str, module: Module) -> Result<()> {
        self.bind_space(name, module.carrier().clone())?;
        self.modules.insert(name.to_string(), module);
        Ok(())
    }

    pub fn map(&self, name: &str) -> Option<&LinMap> {
        self.maps.get(name)
    }

    pub fn space(&self, name: &str) -> Option<&Shape> {
        self.spaces.get(name)
    }

    pub fn map_names(&self) -> impl Iterator<Item = &str> {
        self.maps.keys().map(String::as_str)
    }

    pub fn space_names(&self) -> impl Iterator<Item = &str> {
        self.spaces.keys().map(String::as_str)
    }
}

fn unbound(name: &str, e: &Expr) -> Error {
    Error::Unbound {
        name: name.to_string(),
        line: e.span.line,
        column: e.span.column,
    }
}

fn shape_error(e: &Expr, message: String) -> Error {
    Error::Shape {
        node: e.to_string(),
        line: e.span.line,
        column: e.span.column,
        message,
    }
}

fn lookup_space<'a>(env: &'a Environment, name: &str, e: &Expr) -> Result<&'a Shape> {
    env.spaces.get(name).ok_or_else(|| unbound(name, e))
}

/// The map denoted by `e`. Shape mismatches name the node that does not fit.
pub fn evaluate(e: &Expr, env: &Environment) -> Result<LinMap> {
    match &e.node {
        Node::Name(n) => env.maps.get(n).cloned().ok_or_else(|| unbound(n, e)),
        Node::Id(s) => Ok(LinMap::identity(lookup_space(env, s, e)?.clone())),
        Node::Swap(a, b) => {
            let (u, v) = (lookup_space(env, a, e)?, lookup_space(env, b, e)?);
            Ok(LinMap::swap_shapes(u, v))
        }
        Node::Braid(a, b) => {
            let (h, r) = env
                .ambient
                .as_ref()
                .ok_or_else(|| shape_error(e, "no quasitriangular structure in scope".into()))?;
            let v = env.modules.get(a).ok_or_else(|| unbound(a, e))?;
            let w = env.modules.get(b).ok_or_else(|| unbound(b, e))?;
            module_braiding(h, r, v, w).map_err(|err| shape_error(e, err.to_string()))
        }
        Node::Compose(parts) => {
            let mut acc = evaluate(&parts[0], env)?;
            for p in &parts[1..] {
                let next = evaluate(p, env)?;
                if acc.codomain() != next.domain() {
                    return Err(shape_error(
                        p,
                        format!("expects {} but receives {}", next.domain(), acc.codomain()),
                    ));
                }
                acc = compose(&acc, &next)?;
            }
            Ok(acc)
        }
        Node::Tensor(parts) => {
            let maps = parts.iter().map(|p| evaluate(p, env)).collect::<Result<Vec<_>>>()?;
            let refs: Vec<&LinMap> = maps.iter().collect();
            Ok(tensor_all(&refs))
        }
    }
}
