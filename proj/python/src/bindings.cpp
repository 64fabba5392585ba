#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <tuple>
#include <vector>

#include "dptrack/dp.hpp"
#include "dptrack/eval.hpp"
#include "dptrack/io.hpp"
#include "dptrack/synth.hpp"

namespace py = pybind11;
using namespace dptrack;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;
using XY = std::tuple<int, int>;

ProbSequence sequence_from_array(const Array& a) {
  if (a.ndim() != 3) throw Error(ErrorKind::DimensionMismatch, "expected a (T, H, W) array");
  const auto frames = static_cast<std::size_t>(a.shape(0));
  const auto height = static_cast<int>(a.shape(1));
  const auto width = static_cast<int>(a.shape(2));
  const std::size_t plane = static_cast<std::size_t>(width) * height;
  if (frames == 0) throw Error(ErrorKind::EmptySequence, "array has no frames");
  std::vector<ProbMap> maps;
  maps.reserve(frames);
  const double* data = a.data();
  for (std::size_t t = 0; t < frames; ++t) {
    maps.push_back(make_prob_map(width, height,
                                 std::vector<double>(data + t * plane, data + (t + 1) * plane)));
  }
  return ProbSequence(std::move(maps));
}

py::array_t<double> sequence_to_array(const ProbSequence& seq) {
  py::array_t<double> out({static_cast<py::ssize_t>(seq.size()),
                           static_cast<py::ssize_t>(seq.height()),
                           static_cast<py::ssize_t>(seq.width())});
  double* dst = out.mutable_data();
  for (const ProbMap& frame : seq.frames()) {
    dst = std::copy(frame.values().begin(), frame.values().end(), dst);
  }
  return out;
}

std::vector<XY> to_xy(const std::vector<PixelCoord>& points) {
  std::vector<XY> out;
  out.reserve(points.size());
  for (const auto& p : points) out.emplace_back(p.x, p.y);
  return out;
}

std::vector<PixelCoord> from_xy(const std::vector<XY>& points) {
  std::vector<PixelCoord> out;
  out.reserve(points.size());
  for (const auto& [x, y] : points) out.push_back({x, y});
  return out;
}

std::optional<Anchor> to_anchor(const std::optional<XY>& init) {
  if (!init) return std::nullopt;
  return Anchor{{std::get<0>(*init), std::get<1>(*init)}};
}

GroundTruth gt_from(const std::vector<std::tuple<double, double>>& centers) {
  GroundTruth gt;
  for (const auto& [x, y] : centers) gt.centers.push_back({x, y});
  return gt;
}

py::dict report_dict(const EvalReport& r) {
  py::dict d;
  d["errors"] = r.errors;
  d["average_error"] = r.average_error;
  d["thresholds"] = r.curve.thresholds;
  d["fractions"] = r.curve.fractions;
  d["precision_at_20"] = r.precision_at_20;
  return d;
}

}  // namespace

PYBIND11_MODULE(_dptrack, m) {
  m.doc() = "Slope-constrained dynamic-programming tracker over probability maps";

  static py::exception<Error> error_type(m, "DPTrackError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      // args == (kind, message)
      py::tuple args = py::make_tuple(std::string(to_string(e.kind())), std::string(e.what()));
      PyErr_SetObject(error_type.ptr(), args.ptr());
    }
  });

  py::class_<ProbSequence>(m, "ProbSequence")
      .def(py::init(&sequence_from_array), py::arg("values"),
           "Validated sequence from a (T, H, W) array of values in [0, 1].")
      .def_property_readonly("frames", &ProbSequence::size)
      .def_property_readonly("width", &ProbSequence::width)
      .def_property_readonly("height", &ProbSequence::height)
      .def("to_numpy", &sequence_to_array)
      .def("__len__", &ProbSequence::size)
      .def("__eq__", [](const ProbSequence& a, const ProbSequence& b) { return a == b; });

  py::class_<TrackPath>(m, "TrackPath")
      .def_property_readonly("points", [](const TrackPath& p) { return to_xy(p.points); })
      .def_readonly("score", &TrackPath::score)
      .def("__len__", [](const TrackPath& p) { return p.points.size(); })
      .def("__repr__", [](const TrackPath& p) {
        return "<TrackPath frames=" + std::to_string(p.points.size()) +
               " score=" + format_double(p.score) + ">";
      });

  m.def(
      "track",
      [](const ProbSequence& seq, int radius, std::optional<XY> init) {
        return track(seq, SlopeConstraint(radius), to_anchor(init));
      },
      py::arg("seq"), py::arg("radius"), py::arg("init") = py::none(),
      "Globally optimal path under the slope constraint.");
  m.def(
      "greedy_track",
      [](const ProbSequence& seq, int radius, std::optional<XY> init) {
        return greedy_track(seq, SlopeConstraint(radius), to_anchor(init));
      },
      py::arg("seq"), py::arg("radius"), py::arg("init") = py::none());
  m.def(
      "brute_force_track",
      [](const ProbSequence& seq, int radius, std::optional<XY> init) {
        return brute_force_track(seq, SlopeConstraint(radius), to_anchor(init));
      },
      py::arg("seq"), py::arg("radius"), py::arg("init") = py::none());
  m.def(
      "dp_forward",
      [](const ProbSequence& seq, int radius, std::optional<XY> init) {
        const DPTable table = dp_forward(seq, SlopeConstraint(radius), to_anchor(init));
        const std::vector<py::ssize_t> shape{static_cast<py::ssize_t>(table.frames()),
                                             table.height(), table.width()};
        py::array_t<double> cumulative(shape);
        py::array_t<std::int32_t> back(shape);
        double* c = cumulative.mutable_data();
        std::int32_t* b = back.mutable_data();
        for (std::size_t t = 0; t < table.frames(); ++t) {
          c = std::copy(table.cumulative_frame(t).begin(), table.cumulative_frame(t).end(), c);
          b = std::copy(table.backpointer_frame(t).begin(), table.backpointer_frame(t).end(), b);
        }
        return py::make_tuple(cumulative, back);
      },
      py::arg("seq"), py::arg("radius"), py::arg("init") = py::none(),
      "Cumulative scores and row-major predecessor indices (-1 for none), both (T, H, W).");
  m.def(
      "path_score",
      [](const ProbSequence& seq, const std::vector<XY>& points) {
        return path_score(seq, from_xy(points));
      },
      py::arg("seq"), py::arg("points"));

  m.def(
      "render_scenario",
      [](const std::string& text) {
        auto [seq, gt] = render_scenario(parse_scenario(text));
        std::vector<std::tuple<double, double>> centers;
        for (const auto& c : gt.centers) centers.emplace_back(c.x, c.y);
        return py::make_tuple(std::move(seq), centers);
      },
      py::arg("scenario_text"), "Render a scenario description; returns (seq, gt_centers).");

  m.def(
      "center_errors",
      [](const std::vector<XY>& points, const std::vector<std::tuple<double, double>>& gt) {
        return center_errors(from_xy(points), gt_from(gt));
      },
      py::arg("points"), py::arg("gt"));
  m.def(
      "precision_curve",
      [](const std::vector<double>& errors, double max_threshold, double step) {
        const PrecisionCurve c = precision_curve(errors, max_threshold, step);
        return py::make_tuple(c.thresholds, c.fractions);
      },
      py::arg("errors"), py::arg("max_threshold") = kDefaultMaxThreshold,
      py::arg("step") = kDefaultThresholdStep);
  m.def(
      "run_ope",
      [](const ProbSequence& seq, const std::vector<std::tuple<double, double>>& gt, int radius,
         bool initialized, bool greedy) {
        const OpeResult r = run_ope(seq, gt_from(gt), SlopeConstraint(radius), initialized,
                                    greedy ? Tracker::Greedy : Tracker::Dp);
        py::dict d = report_dict(r.report);
        d["path"] = r.path;
        return d;
      },
      py::arg("seq"), py::arg("gt"), py::arg("radius"), py::arg("initialized") = true,
      py::arg("greedy") = false);
  m.def(
      "occlusion_benchmark",
      [](const std::string& scenario_text, const std::vector<int>& lengths,
         const std::vector<int>& radii) {
        py::list rows;
        for (const auto& r : run_occlusion_benchmark(lengths, radii, parse_scenario(scenario_text))) {
          py::dict d;
          d["occlusion_length"] = r.point.occlusion_length;
          d["radius"] = r.point.radius;
          d["dp_average_error"] = r.dp_average_error;
          d["greedy_average_error"] = r.greedy_average_error;
          d["dp_precision_at_20"] = r.dp_precision_at_20;
          d["greedy_precision_at_20"] = r.greedy_precision_at_20;
          d["dp_post_occlusion_error"] = r.dp_post_occlusion_error;
          d["greedy_post_occlusion_error"] = r.greedy_post_occlusion_error;
          rows.append(d);
        }
        return rows;
      },
      py::arg("scenario_text"), py::arg("lengths"), py::arg("radii"));

  m.def(
      "write_pmseq",
      [](const ProbSequence& seq) { return py::bytes(write_pmseq(seq)); }, py::arg("seq"));
  m.def(
      "read_pmseq",
      [](const py::bytes& data) { return read_pmseq(std::string_view(data)); }, py::arg("data"));
}
