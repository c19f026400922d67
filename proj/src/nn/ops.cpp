// Copyright 2026 The arlidar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "arl/nn/ops.hpp"

#include "arl/scene/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace arl::nn {

namespace {

using RowMat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MapMat = Eigen::Map<RowMat>;
using CMapMat = Eigen::Map<const RowMat>;

void require_same(const Var& a, const Var& b, const char* op) {
  if (a.shape() != b.shape()) {
    throw ShapeError(std::string(op) + ": shape " + shape_str(a.shape()) + " vs " + shape_str(b.shape()));
  }
}

void require_rank(const Var& x, int rank, const char* op) {
  if (x.value().rank() != rank) {
    throw ShapeError(std::string(op) + ": expected rank " + std::to_string(rank) + ", got " + shape_str(x.shape()));
  }
}

// Accumulate into input k's gradient if it wants one.
template <typename F>
void accum(Node& self, std::size_t k, F&& f) {
  Node& in = *self.inputs[k];
  if (!in.requires_grad) return;
  f(in.grad_buffer());
}

}  // namespace

Var add(const Var& a, const Var& b) {
  require_same(a, b, "add");
  Tensor out = a.value();
  out.add_inplace(b.value());
  return make_op(std::move(out), {a, b}, [](Node& self) {
    for (std::size_t k = 0; k < 2; ++k) accum(self, k, [&](Tensor& g) { g.add_inplace(self.grad); });
  });
}

Var sub(const Var& a, const Var& b) {
  require_same(a, b, "sub");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b.value()[i];
  return make_op(std::move(out), {a, b}, [](Node& self) {
    accum(self, 0, [&](Tensor& g) { g.add_inplace(self.grad); });
    accum(self, 1, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] -= self.grad[i];
    });
  });
}

Var mul(const Var& a, const Var& b) {
  require_same(a, b, "mul");
  Tensor out = a.value();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.value()[i];
  return make_op(std::move(out), {a, b}, [](Node& self) {
    const Tensor& av = self.inputs[0]->value;
    const Tensor& bv = self.inputs[1]->value;
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * bv[i];
    });
    accum(self, 1, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * av[i];
    });
  });
}

Var scale(const Var& a, double s) {
  Tensor out = a.value();
  for (double& v : out.values()) v *= s;
  return make_op(std::move(out), {a}, [s](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += s * self.grad[i];
    });
  });
}

Var silu(const Var& x) {
  Tensor out = x.value();
  for (double& v : out.values()) v = v / (1.0 + std::exp(-v));
  return make_op(std::move(out), {x}, [](Node& self) {
    const Tensor& xv = self.inputs[0]->value;
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double sg = 1.0 / (1.0 + std::exp(-xv[i]));
        g[i] += self.grad[i] * sg * (1.0 + xv[i] * (1.0 - sg));
      }
    });
  });
}

Var exp(const Var& x) {
  Tensor out = x.value();
  for (double& v : out.values()) v = std::exp(v);
  return make_op(std::move(out), {x}, [](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i] * self.value[i];
    });
  });
}

namespace {

// x [N, C, rest...] with v [N, C]; returns the size of `rest`.
std::size_t channel_inner(const Var& x, const Var& v, const char* op) {
  if (x.value().rank() < 2 || v.value().rank() != 2 || v.shape()[0] != x.shape()[0] || v.shape()[1] != x.shape()[1]) {
    throw ShapeError(std::string(op) + ": " + shape_str(x.shape()) + " with " + shape_str(v.shape()));
  }
  return x.value().size() / v.value().size();
}

}  // namespace

Var add_channel(const Var& x, const Var& v) {
  const std::size_t inner = channel_inner(x, v, "add_channel");
  Tensor out = x.value();
  const std::size_t nc = v.value().size();
  for (std::size_t c = 0; c < nc; ++c) {
    double* o = out.data() + c * inner;
    const double bv = v.value()[c];
    for (std::size_t i = 0; i < inner; ++i) o[i] += bv;
  }
  return make_op(std::move(out), {x, v}, [inner, nc](Node& self) {
    accum(self, 0, [&](Tensor& g) { g.add_inplace(self.grad); });
    accum(self, 1, [&](Tensor& g) {
      for (std::size_t c = 0; c < nc; ++c) {
        const double* gs = self.grad.data() + c * inner;
        double s = 0.0;
        for (std::size_t i = 0; i < inner; ++i) s += gs[i];
        g[c] += s;
      }
    });
  });
}

Var mul_channel(const Var& x, const Var& v) {
  const std::size_t inner = channel_inner(x, v, "mul_channel");
  Tensor out = x.value();
  const std::size_t nc = v.value().size();
  for (std::size_t c = 0; c < nc; ++c) {
    double* o = out.data() + c * inner;
    const double sv = v.value()[c];
    for (std::size_t i = 0; i < inner; ++i) o[i] *= sv;
  }
  return make_op(std::move(out), {x, v}, [inner, nc](Node& self) {
    const Tensor& xv = self.inputs[0]->value;
    const Tensor& vv = self.inputs[1]->value;
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t c = 0; c < nc; ++c) {
        const double sv = vv[c];
        for (std::size_t i = 0; i < inner; ++i) g[c * inner + i] += self.grad[c * inner + i] * sv;
      }
    });
    accum(self, 1, [&](Tensor& g) {
      for (std::size_t c = 0; c < nc; ++c) {
        double s = 0.0;
        for (std::size_t i = 0; i < inner; ++i) s += self.grad[c * inner + i] * xv[c * inner + i];
        g[c] += s;
      }
    });
  });
}

Var concat_channels(const std::vector<Var>& xs) {
  if (xs.empty()) throw ShapeError("concat_channels of nothing");
  for (const auto& x : xs) require_rank(x, 4, "concat_channels");
  const int n = xs[0].shape()[0], h = xs[0].shape()[2], w = xs[0].shape()[3];
  int ctot = 0;
  std::vector<int> offs;
  for (const auto& x : xs) {
    if (x.shape()[0] != n || x.shape()[2] != h || x.shape()[3] != w) {
      throw ShapeError("concat_channels: " + shape_str(x.shape()) + " vs " + shape_str(xs[0].shape()));
    }
    offs.push_back(ctot);
    ctot += x.shape()[1];
  }
  const std::size_t plane = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  Tensor out({n, ctot, h, w});
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const int ck = xs[k].shape()[1];
    for (int b = 0; b < n; ++b) {
      const double* src = xs[k].value().data() + static_cast<std::size_t>(b * ck) * plane;
      double* dst = out.data() + static_cast<std::size_t>(b * ctot + offs[k]) * plane;
      std::copy(src, src + static_cast<std::size_t>(ck) * plane, dst);
    }
  }
  return make_op(std::move(out), xs, [offs, n, ctot, plane](Node& self) {
    for (std::size_t k = 0; k < self.inputs.size(); ++k) {
      accum(self, k, [&](Tensor& g) {
        const int ck = self.inputs[k]->value.dim(1);
        for (int b = 0; b < n; ++b) {
          const double* src = self.grad.data() + static_cast<std::size_t>(b * ctot + offs[k]) * plane;
          double* dst = g.data() + static_cast<std::size_t>(b * ck) * plane;
          for (std::size_t i = 0; i < static_cast<std::size_t>(ck) * plane; ++i) dst[i] += src[i];
        }
      });
    }
  });
}

Var slice_channels(const Var& x, int c0, int c1) {
  require_rank(x, 4, "slice_channels");
  const int n = x.shape()[0], c = x.shape()[1], h = x.shape()[2], w = x.shape()[3];
  if (c0 < 0 || c1 > c || c0 >= c1) throw ShapeError("slice_channels: bad range");
  const std::size_t plane = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  const int cs = c1 - c0;
  Tensor out({n, cs, h, w});
  for (int b = 0; b < n; ++b) {
    const double* src = x.value().data() + static_cast<std::size_t>(b * c + c0) * plane;
    std::copy(src, src + static_cast<std::size_t>(cs) * plane, out.data() + static_cast<std::size_t>(b * cs) * plane);
  }
  return make_op(std::move(out), {x}, [n, c, c0, cs, plane](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (int b = 0; b < n; ++b) {
        const double* src = self.grad.data() + static_cast<std::size_t>(b * cs) * plane;
        double* dst = g.data() + static_cast<std::size_t>(b * c + c0) * plane;
        for (std::size_t i = 0; i < static_cast<std::size_t>(cs) * plane; ++i) dst[i] += src[i];
      }
    });
  });
}

Var resize_nearest(const Var& x, int out_h, int out_w) {
  require_rank(x, 4, "resize_nearest");
  const int nc = x.shape()[0] * x.shape()[1], h = x.shape()[2], w = x.shape()[3];
  if (out_h <= 0 || out_w <= 0) throw ShapeError("resize_nearest: bad output size");
  // Source index per output position (pixel-centre mapping).
  std::vector<std::size_t> src(static_cast<std::size_t>(out_h) * static_cast<std::size_t>(out_w));
  for (int i = 0; i < out_h; ++i) {
    const int si = std::min(h - 1, static_cast<int>((i + 0.5) * h / out_h));
    for (int j = 0; j < out_w; ++j) {
      const int sj = std::min(w - 1, static_cast<int>((j + 0.5) * w / out_w));
      src[static_cast<std::size_t>(i * out_w + j)] = static_cast<std::size_t>(si * w + sj);
    }
  }
  const std::size_t in_plane = static_cast<std::size_t>(h) * static_cast<std::size_t>(w);
  const std::size_t out_plane = src.size();
  Tensor out({x.shape()[0], x.shape()[1], out_h, out_w});
  for (int p = 0; p < nc; ++p) {
    const double* xi = x.value().data() + static_cast<std::size_t>(p) * in_plane;
    double* o = out.data() + static_cast<std::size_t>(p) * out_plane;
    for (std::size_t k = 0; k < out_plane; ++k) o[k] = xi[src[k]];
  }
  return make_op(std::move(out), {x}, [src, nc, in_plane, out_plane](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (int p = 0; p < nc; ++p) {
        const double* go = self.grad.data() + static_cast<std::size_t>(p) * out_plane;
        double* gi = g.data() + static_cast<std::size_t>(p) * in_plane;
        for (std::size_t k = 0; k < out_plane; ++k) gi[src[k]] += go[k];
      }
    });
  });
}

Var upsample_nearest(const Var& x, int kh, int kw) {
  require_rank(x, 4, "upsample_nearest");
  return resize_nearest(x, x.shape()[2] * kh, x.shape()[3] * kw);
}

Var avg_pool(const Var& x, int kh, int kw) {
  require_rank(x, 4, "avg_pool");
  const int nc = x.shape()[0] * x.shape()[1], h = x.shape()[2], w = x.shape()[3];
  if (kh <= 0 || kw <= 0 || h % kh != 0 || w % kw != 0) {
    throw ShapeError("avg_pool: " + shape_str(x.shape()) + " not divisible by kernel");
  }
  const int oh = h / kh, ow = w / kw;
  const double inv = 1.0 / (kh * kw);
  Tensor out({x.shape()[0], x.shape()[1], oh, ow});
  for (int p = 0; p < nc; ++p) {
    const double* xi = x.value().data() + static_cast<std::size_t>(p) * static_cast<std::size_t>(h * w);
    double* o = out.data() + static_cast<std::size_t>(p) * static_cast<std::size_t>(oh * ow);
    for (int i = 0; i < oh; ++i)
      for (int j = 0; j < ow; ++j) {
        double s = 0.0;
        for (int a = 0; a < kh; ++a)
          for (int b = 0; b < kw; ++b) s += xi[(i * kh + a) * w + j * kw + b];
        o[i * ow + j] = s * inv;
      }
  }
  return make_op(std::move(out), {x}, [nc, h, w, kh, kw, oh, ow, inv](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (int p = 0; p < nc; ++p) {
        const double* go = self.grad.data() + static_cast<std::size_t>(p) * static_cast<std::size_t>(oh * ow);
        double* gi = g.data() + static_cast<std::size_t>(p) * static_cast<std::size_t>(h * w);
        for (int i = 0; i < oh; ++i)
          for (int j = 0; j < ow; ++j) {
            const double v = go[i * ow + j] * inv;
            for (int a = 0; a < kh; ++a)
              for (int b = 0; b < kw; ++b) gi[(i * kh + a) * w + j * kw + b] += v;
          }
      }
    });
  });
}

Var conv2d(const Var& x, const Var& w, const Var& b, const ConvSpec& spec) {
  require_rank(x, 4, "conv2d input");
  require_rank(w, 4, "conv2d weight");
  const int n = x.shape()[0], ci = x.shape()[1], h = x.shape()[2], wd = x.shape()[3];
  const int co = w.shape()[0], kh = w.shape()[2], kw = w.shape()[3];
  if (w.shape()[1] != ci) {
    throw ShapeError("conv2d: input " + shape_str(x.shape()) + " with weight " + shape_str(w.shape()));
  }
  if (b.defined() && (b.value().rank() != 1 || b.shape()[0] != co)) throw ShapeError("conv2d: bias shape");
  const int ho = (h + 2 * spec.pad_h - kh) / spec.stride_h + 1;
  const int wo = (wd + 2 * spec.pad_w - kw) / spec.stride_w + 1;
  if (ho <= 0 || wo <= 0) throw ShapeError("conv2d: empty output for " + shape_str(x.shape()));

  const int taps = kh * kw;
  const int kdim = ci * taps;
  const int p_out = ho * wo;
  const std::size_t plane = static_cast<std::size_t>(h) * static_cast<std::size_t>(wd);

  // Source offset within an input plane for each (tap, output pixel); -1 = zero padding.
  std::vector<int> src(static_cast<std::size_t>(taps) * static_cast<std::size_t>(p_out));
  for (int a = 0; a < kh; ++a)
    for (int c = 0; c < kw; ++c)
      for (int oy = 0; oy < ho; ++oy)
        for (int ox = 0; ox < wo; ++ox) {
          const int iy = oy * spec.stride_h + a - spec.pad_h;
          int ix = ox * spec.stride_w + c - spec.pad_w;
          if (spec.circular_w) ix = ((ix % wd) + wd) % wd;
          const bool ok = iy >= 0 && iy < h && ix >= 0 && ix < wd;
          src[static_cast<std::size_t>((a * kw + c) * p_out + oy * wo + ox)] = ok ? iy * wd + ix : -1;
        }

  auto cols = std::make_shared<std::vector<double>>(static_cast<std::size_t>(n) * static_cast<std::size_t>(kdim) *
                                                    static_cast<std::size_t>(p_out));
  Tensor out({n, co, ho, wo});
  CMapMat wm(w.value().data(), co, kdim);
  for (int bi = 0; bi < n; ++bi) {
    double* col = cols->data() + static_cast<std::size_t>(bi) * static_cast<std::size_t>(kdim * p_out);
    const double* xb = x.value().data() + static_cast<std::size_t>(bi * ci) * plane;
    for (int c = 0; c < ci; ++c) {
      const double* xp = xb + static_cast<std::size_t>(c) * plane;
      for (int t = 0; t < taps; ++t) {
        double* row = col + static_cast<std::size_t>((c * taps + t) * p_out);
        const int* s = src.data() + static_cast<std::size_t>(t * p_out);
        for (int k = 0; k < p_out; ++k) row[k] = s[k] >= 0 ? xp[s[k]] : 0.0;
      }
    }
    MapMat om(out.data() + static_cast<std::size_t>(bi * co * p_out), co, p_out);
    om.noalias() = wm * CMapMat(col, kdim, p_out);
    if (b.defined()) om.colwise() += Eigen::Map<const Eigen::VectorXd>(b.value().data(), co);
  }

  std::vector<Var> inputs{x, w};
  if (b.defined()) inputs.push_back(b);
  return make_op(std::move(out), inputs, [=, src = std::move(src)](Node& self) {
    const Tensor& wv = self.inputs[1]->value;
    CMapMat wmat(wv.data(), co, kdim);
    std::vector<double> dcol(static_cast<std::size_t>(kdim * p_out));
    for (int bi = 0; bi < n; ++bi) {
      CMapMat gout(self.grad.data() + static_cast<std::size_t>(bi * co * p_out), co, p_out);
      const double* col = cols->data() + static_cast<std::size_t>(bi) * static_cast<std::size_t>(kdim * p_out);
      accum(self, 1, [&](Tensor& g) {
        MapMat(g.data(), co, kdim).noalias() += gout * CMapMat(col, kdim, p_out).transpose();
      });
      if (self.inputs.size() > 2) {
        accum(self, 2, [&](Tensor& g) {
          Eigen::Map<Eigen::VectorXd>(g.data(), co) += gout.rowwise().sum();
        });
      }
      accum(self, 0, [&](Tensor& g) {
        MapMat(dcol.data(), kdim, p_out).noalias() = wmat.transpose() * gout;
        double* gb = g.data() + static_cast<std::size_t>(bi * ci) * plane;
        for (int c = 0; c < ci; ++c) {
          double* gp = gb + static_cast<std::size_t>(c) * plane;
          for (int t = 0; t < taps; ++t) {
            const double* row = dcol.data() + static_cast<std::size_t>((c * taps + t) * p_out);
            const int* s = src.data() + static_cast<std::size_t>(t * p_out);
            for (int k = 0; k < p_out; ++k)
              if (s[k] >= 0) gp[s[k]] += row[k];
          }
        }
      });
    }
  });
}

Var linear(const Var& x, const Var& w, const Var& b) {
  require_rank(x, 2, "linear input");
  require_rank(w, 2, "linear weight");
  const int n = x.shape()[0], f = x.shape()[1], o = w.shape()[0];
  if (w.shape()[1] != f) throw ShapeError("linear: input " + shape_str(x.shape()) + " with weight " + shape_str(w.shape()));
  if (b.defined() && (b.value().rank() != 1 || b.shape()[0] != o)) throw ShapeError("linear: bias shape");
  Tensor out({n, o});
  MapMat om(out.data(), n, o);
  om.noalias() = CMapMat(x.value().data(), n, f) * CMapMat(w.value().data(), o, f).transpose();
  if (b.defined()) om.rowwise() += Eigen::Map<const Eigen::RowVectorXd>(b.value().data(), o);
  std::vector<Var> inputs{x, w};
  if (b.defined()) inputs.push_back(b);
  return make_op(std::move(out), inputs, [n, f, o](Node& self) {
    CMapMat g(self.grad.data(), n, o);
    accum(self, 0, [&](Tensor& gx) {
      MapMat(gx.data(), n, f).noalias() += g * CMapMat(self.inputs[1]->value.data(), o, f);
    });
    accum(self, 1, [&](Tensor& gw) {
      MapMat(gw.data(), o, f).noalias() += g.transpose() * CMapMat(self.inputs[0]->value.data(), n, f);
    });
    if (self.inputs.size() > 2) {
      accum(self, 2, [&](Tensor& gb) { Eigen::Map<Eigen::RowVectorXd>(gb.data(), o) += g.colwise().sum(); });
    }
  });
}

Var bmm(const Var& a, const Var& b) {
  require_rank(a, 3, "bmm lhs");
  require_rank(b, 3, "bmm rhs");
  const int nb = a.shape()[0], m = a.shape()[1], k = a.shape()[2], p = b.shape()[2];
  if (b.shape()[0] != nb || b.shape()[1] != k) throw ShapeError("bmm: " + shape_str(a.shape()) + " x " + shape_str(b.shape()));
  Tensor out({nb, m, p});
  for (int i = 0; i < nb; ++i) {
    MapMat(out.data() + static_cast<std::size_t>(i * m * p), m, p).noalias() =
        CMapMat(a.value().data() + static_cast<std::size_t>(i * m * k), m, k) *
        CMapMat(b.value().data() + static_cast<std::size_t>(i * k * p), k, p);
  }
  return make_op(std::move(out), {a, b}, [nb, m, k, p](Node& self) {
    for (int i = 0; i < nb; ++i) {
      CMapMat g(self.grad.data() + static_cast<std::size_t>(i * m * p), m, p);
      accum(self, 0, [&](Tensor& ga) {
        MapMat(ga.data() + static_cast<std::size_t>(i * m * k), m, k).noalias() +=
            g * CMapMat(self.inputs[1]->value.data() + static_cast<std::size_t>(i * k * p), k, p).transpose();
      });
      accum(self, 1, [&](Tensor& gb) {
        MapMat(gb.data() + static_cast<std::size_t>(i * k * p), k, p).noalias() +=
            CMapMat(self.inputs[0]->value.data() + static_cast<std::size_t>(i * m * k), m, k).transpose() * g;
      });
    }
  });
}

Var transpose_last2(const Var& a) {
  require_rank(a, 3, "transpose_last2");
  const int nb = a.shape()[0], m = a.shape()[1], k = a.shape()[2];
  Tensor out({nb, k, m});
  for (int i = 0; i < nb; ++i) {
    MapMat(out.data() + static_cast<std::size_t>(i * m * k), k, m) =
        CMapMat(a.value().data() + static_cast<std::size_t>(i * m * k), m, k).transpose();
  }
  return make_op(std::move(out), {a}, [nb, m, k](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (int i = 0; i < nb; ++i) {
        MapMat(g.data() + static_cast<std::size_t>(i * m * k), m, k) +=
            CMapMat(self.grad.data() + static_cast<std::size_t>(i * m * k), k, m).transpose();
      }
    });
  });
}

Var softmax_last(const Var& x) {
  if (x.value().rank() < 1) throw ShapeError("softmax_last on a scalar");
  const int d = x.shape().back();
  const std::size_t rows = x.value().size() / static_cast<std::size_t>(d);
  Tensor out = x.value();
  for (std::size_t r = 0; r < rows; ++r) {
    double* v = out.data() + r * static_cast<std::size_t>(d);
    const double mx = *std::max_element(v, v + d);
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += (v[i] = std::exp(v[i] - mx));
    for (int i = 0; i < d; ++i) v[i] /= s;
  }
  return make_op(std::move(out), {x}, [rows, d](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t r = 0; r < rows; ++r) {
        const double* y = self.value.data() + r * static_cast<std::size_t>(d);
        const double* gy = self.grad.data() + r * static_cast<std::size_t>(d);
        double dot = 0.0;
        for (int i = 0; i < d; ++i) dot += y[i] * gy[i];
        double* gx = g.data() + r * static_cast<std::size_t>(d);
        for (int i = 0; i < d; ++i) gx[i] += y[i] * (gy[i] - dot);
      }
    });
  });
}

Var reshape(const Var& x, Shape shape) {
  Tensor out = x.value().reshaped(std::move(shape));
  return make_op(std::move(out), {x}, [](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += self.grad[i];
    });
  });
}

Var sum(const Var& x) {
  double s = 0.0;
  for (double v : x.value().values()) s += v;
  return make_op(Tensor({1}, {s}), {x}, [](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      for (double& v : g.values()) v += self.grad[0];
    });
  });
}

Var mean(const Var& x) {
  if (x.value().empty()) throw ShapeError("mean of an empty tensor");
  return scale(sum(x), 1.0 / static_cast<double>(x.value().size()));
}

Var mse(const Var& pred, const Tensor& target) {
  if (pred.shape() != target.shape()) {
    throw ShapeError("mse: " + shape_str(pred.shape()) + " vs " + shape_str(target.shape()));
  }
  const double inv = 1.0 / static_cast<double>(target.size());
  double s = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    const double d = pred.value()[i] - target[i];
    s += d * d;
  }
  return make_op(Tensor({1}, {s * inv}), {pred}, [target, inv](Node& self) {
    accum(self, 0, [&](Tensor& g) {
      const Tensor& pv = self.inputs[0]->value;
      for (std::size_t i = 0; i < g.size(); ++i) g[i] += 2.0 * inv * self.grad[0] * (pv[i] - target[i]);
    });
  });
}

}  // namespace arl::nn
