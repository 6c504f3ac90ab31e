use crate::domain::VertexId;

/// Callbacks invoked while a walk is simulated.
///
/// `time` is the real time of the event. Leaving `∂` is reported as a jump
/// from [`BOUNDARY`](crate::domain::BOUNDARY).
pub trait WalkObserver {
    fn on_jump(&mut self, _from: VertexId, _to: VertexId, _time: f64) {}
    fn on_boundary_return(&mut self, _time: f64) {}
}

#[derive(Debug, Default, Clone, Copy)]
pub struct NoObserver;

impl WalkObserver for NoObserver {}

impl<T: WalkObserver + ?Sized> WalkObserver for &mut T {
    fn on_jump(&mut self, from: VertexId, to: VertexId, time: f64) {
        (**self).on_jump(from, to, time)
    }
    fn on_boundary_return(&mut self, time: f64) {
        (**self).on_boundary_return(time)
    }
}

impl<A: WalkObserver, B: WalkObserver> WalkObserver for (A, B) {
    fn on_jump(&mut self, from: VertexId, to: VertexId, time: f64) {
        self.0.on_jump(from, to, time);
        self.1.on_jump(from, to, time);
    }
    fn on_boundary_return(&mut self, time: f64) {
        self.0.on_boundary_return(time);
        self.1.on_boundary_return(time);
    }
}

impl<O: WalkObserver> WalkObserver for [O] {
    fn on_jump(&mut self, from: VertexId, to: VertexId, time: f64) {
        for o in self.iter_mut() {
            o.on_jump(from, to, time);
        }
    }
    fn on_boundary_return(&mut self, time: f64) {
        for o in self.iter_mut() {
            o.on_boundary_return(time);
        }
    }
}

impl<O: WalkObserver> WalkObserver for Vec<O> {
    fn on_jump(&mut self, from: VertexId, to: VertexId, time: f64) {
        self.as_mut_slice().on_jump(from, to, time)
    }
    fn on_boundary_return(&mut self, time: f64) {
        self.as_mut_slice().on_boundary_return(time)
    }
}
