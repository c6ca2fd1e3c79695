#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <cstring>

#include "vmafc/vmafc.hpp"

namespace py = pybind11;
using namespace vmafc;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

PlaneBuffer plane_from_array(const U8Array& a) {
  if (a.ndim() != 2) throw GeometryError("plane arrays must be two-dimensional");
  const auto h = static_cast<int>(a.shape(0));
  const auto w = static_cast<int>(a.shape(1));
  std::vector<std::uint8_t> data(a.data(), a.data() + a.size());
  return PlaneBuffer(w, h, std::move(data));
}

py::array_t<std::uint8_t> plane_to_array(const PlaneBuffer& p) {
  py::array_t<std::uint8_t> out({p.height(), p.width()});
  std::memcpy(out.mutable_data(), p.samples().data(), p.size());
  return out;
}

py::dict features_dict(const FeatureVector& f) {
  py::dict d;
  for (std::size_t i = 0; i < kFeatureCount; ++i) d[py::str(std::string(kFeatureNames[i]))] = f[i];
  return d;
}

FeatureVector features_from_dict(const py::dict& d) {
  FeatureVector f;
  for (std::size_t i = 0; i < kFeatureCount; ++i) {
    f[i] = d[py::str(std::string(kFeatureNames[i]))].cast<double>();
  }
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Chroma-aware VMAF toolkit";
  m.attr("__version__") = "0.1.0";
  m.attr("FEATURE_NAMES") = FeatureVector::names();

  // Later registrations are tried first, so subclasses map to their own type.
  auto base = py::register_exception<Error>(m, "Error");
  auto input = py::register_exception<InputError>(m, "InputError", base.ptr());
  py::register_exception<InvariantError>(m, "InvariantError", base.ptr());
  py::register_exception<FormatError>(m, "FormatError", input.ptr());
  py::register_exception<GeometryError>(m, "GeometryError", input.ptr());
  py::register_exception<DomainError>(m, "DomainError", input.ptr());

  py::class_<Yuv420Frame>(m, "Frame")
      .def(py::init([](const U8Array& y, const U8Array& cb, const U8Array& cr) {
             return Yuv420Frame(plane_from_array(y), plane_from_array(cb), plane_from_array(cr));
           }),
           py::arg("y"), py::arg("cb"), py::arg("cr"))
      .def_property_readonly("width", &Yuv420Frame::width)
      .def_property_readonly("height", &Yuv420Frame::height)
      .def_property_readonly("y", [](const Yuv420Frame& f) { return plane_to_array(f.y()); })
      .def_property_readonly("cb", [](const Yuv420Frame& f) { return plane_to_array(f.cb()); })
      .def_property_readonly("cr", [](const Yuv420Frame& f) { return plane_to_array(f.cr()); });

  py::class_<VideoSequence>(m, "Sequence")
      .def(py::init([](std::vector<Yuv420Frame> frames) { return VideoSequence(std::move(frames)); }))
      .def("__len__", &VideoSequence::size)
      .def("__getitem__", [](const VideoSequence& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return s[i];
      })
      .def_property_readonly("width", &VideoSequence::width)
      .def_property_readonly("height", &VideoSequence::height);

  m.def("read_video", &read_video, py::arg("path"), py::arg("width") = py::none(),
        py::arg("height") = py::none());
  m.def("degrade_chroma", py::overload_cast<const VideoSequence&, int>(&degrade_chroma),
        py::arg("seq"), py::arg("step"));
  m.def("degrade_chroma_frame", py::overload_cast<const Yuv420Frame&, int>(&degrade_chroma),
        py::arg("frame"), py::arg("step"));

  m.def("psnr", [](const U8Array& a, const U8Array& b) {
    return psnr_plane(plane_from_array(a), plane_from_array(b));
  });
  m.def("psnr_k11", &psnr_k11, py::arg("psnr_y"), py::arg("psnr_cb"), py::arg("psnr_cr"),
        py::arg("k"));
  m.def("ssim", [](const U8Array& a, const U8Array& b) {
    return ssim_plane(plane_from_array(a), plane_from_array(b));
  });
  m.def("vif", [](const U8Array& a, const U8Array& b) {
    const VifScores s = vif_multiscale(plane_from_array(a), plane_from_array(b));
    return py::make_tuple(py::cast(s.scale), s.overall);
  });
  m.def("adm", [](const U8Array& a, const U8Array& b) {
    const AdmScores s = adm_multiscale(plane_from_array(a), plane_from_array(b));
    return py::make_tuple(py::cast(s.scale), s.overall);
  });
  m.def("quantize_feature", &quantize_feature, py::arg("x"), py::arg("n"));

  m.def(
      "extract_features",
      [](const VideoSequence& ref, const VideoSequence& dist, int n_quant, int threads) {
        py::list out;
        for (const auto& f : extract_feature_vector(ref, dist, n_quant, threads)) {
          out.append(features_dict(f));
        }
        return out;
      },
      py::arg("ref"), py::arg("dist"), py::arg("n_quant") = 8, py::arg("threads") = 1);
  m.def("pool_features", [](const std::vector<py::dict>& frames) {
    std::vector<FeatureVector> v;
    for (const auto& d : frames) v.push_back(features_from_dict(d));
    return features_dict(pool_features(v));
  });

  py::class_<SvrModel>(m, "Model")
      .def_readonly("feature_names", &SvrModel::feature_names)
      .def_readonly("bias", &SvrModel::bias)
      .def_readonly("degenerate", &SvrModel::degenerate)
      .def_property_readonly("n_support", [](const SvrModel& s) { return s.support_vectors.size(); })
      .def("to_json", &model_to_json)
      .def_static("from_json", &model_from_json)
      .def("save", [](const SvrModel& s, const std::filesystem::path& p) { save_model(s, p); })
      .def_static("load", &load_model);

  m.def(
      "train",
      [](const std::vector<std::string>& names, const std::vector<std::vector<double>>& rows,
         const std::vector<double>& targets, double c, double gamma, double nu, int n_quant) {
        if (rows.size() != targets.size()) throw DomainError("rows and targets differ in length");
        TrainingSet set;
        set.feature_names = names;
        for (std::size_t i = 0; i < rows.size(); ++i) {
          set.rows.push_back({std::to_string(i), rows[i], targets[i]});
        }
        ExtractOptions opts;
        opts.n_quant = n_quant;
        return train_svr(set, SvrConfig{c, gamma, nu}, extractor_metadata(opts));
      },
      py::arg("feature_names"), py::arg("rows"), py::arg("targets"), py::arg("c") = 8.0,
      py::arg("gamma") = 0.125, py::arg("nu") = 0.5, py::arg("n_quant") = 8);
  m.def("predict", [](const SvrModel& model, const std::vector<std::string>& names,
                      const std::vector<double>& raw) { return predict(model, names, raw); });
  m.def("predict_features", [](const SvrModel& model, const py::dict& features) {
    return predict(model, features_from_dict(features));
  });

  m.def("srocc", [](const std::vector<double>& x, const std::vector<double>& y) { return srocc(x, y); });
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) { return pearson(x, y); });
  m.def("plcc", [](const std::vector<double>& pred, const std::vector<double>& mos) {
    return plcc_logistic(pred, mos).plcc;
  });
  m.def("fisher_overall", [](const std::vector<double>& r) { return fisher_overall(r).r; });

  m.def("chroma_qp", [](int qp_y, int cb_offset, int cr_offset, bool clipped) {
    return chroma_qp({qp_y, cb_offset, cr_offset, clipped});
  }, py::arg("qp_y"), py::arg("cb_offset") = 0, py::arg("cr_offset") = 0, py::arg("clipped") = true);
  m.def("bd_rate", [](const std::vector<std::pair<double, double>>& anchor,
                      const std::vector<std::pair<double, double>>& test) {
    RdCurve a, t;
    for (const auto& [r, q] : anchor) a.points.push_back({r, q});
    for (const auto& [r, q] : test) t.points.push_back({r, q});
    return bd_rate(a, t);
  });
  m.def("monotonicity_violations", [](const std::vector<std::vector<double>>& grid, double tol) {
    py::list out;
    for (const auto& v : monotonicity_check(grid, tol).violations) {
      out.append(py::make_tuple(v.axis == Violation::Axis::kChromaStep ? "step" : "crf",
                                v.crf_index, v.step_index, v.magnitude));
    }
    return out;
  }, py::arg("grid"), py::arg("tolerance") = kMonotonicityTolerance);

  m.def("descriptors", [](const VideoSequence& seq) {
    const ContentDescriptors d = si_ti_cf(seq);
    return py::make_tuple(d.si, d.ti, d.cf);
  });
  m.def("mos_from_csv", [](const std::filesystem::path& path) {
    const MosReport r = process_scores(read_score_csv(path));
    py::dict out;
    for (const auto& v : r.videos) out[py::str(v.video_id)] = v.mos;
    return py::make_tuple(out, r.rejected_subjects);
  });
}
