#include "fittutor/documents.hpp"
#include "fittutor/error.hpp"
#include "fittutor/session.hpp"

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace fittutor;

namespace
{
// Enum-valued settings travel as their document spelling ("extended",
// "angle", "MoveUp") so Python code can use plain strings.
PairSet pair_set_arg(const std::string& s)
{
   if(auto p = to_pair_set(s)) return *p;
   throw Error(ErrorCode::InvalidConfig, "unknown pair set '" + s + "'");
}

CompareMode mode_arg(const std::string& s)
{
   if(auto m = to_compare_mode(s)) return *m;
   throw Error(ErrorCode::InvalidConfig, "unknown mode '" + s + "'");
}

BodyPart part_arg(const std::string& s)
{
   if(auto p = to_body_part(s)) return *p;
   throw Error(ErrorCode::UnknownPartName, "unknown body part '" + s + "'");
}

ComparisonConfig make_config(const std::string& pair_set,
                             double tolerance,
                             double min_score,
                             const std::string& mode,
                             double angle_tolerance_deg)
{
   auto c                = ComparisonConfig::with_pair_set(pair_set_arg(pair_set));
   c.tolerance           = tolerance;
   c.min_score           = min_score;
   c.mode                = mode_arg(mode);
   c.angle_tolerance_deg = angle_tolerance_deg;
   c.validate();
   return c;
}

using KeypointTuple = std::tuple<std::string, double, double, double>;

PoseFrame make_frame(std::int64_t t, double w, double h, const std::vector<KeypointTuple>& kps)
{
   std::vector<Keypoint> in;
   for(const auto& [part, x, y, score] : kps) in.push_back({part_arg(part), x, y, score});
   return PoseFrame::from_unordered(t, w, h, in);
}

py::dict entry_dict(const ProfileEntry& e)
{
   py::dict d;
   py::object slope = py::none();
   if(e.orientation && e.orientation->is_finite()) slope = py::float_(e.orientation->slope());
   d["slope"]    = slope;
   d["vertical"] = e.orientation && e.orientation->is_vertical();
   d["valid"]    = e.valid;
   d["norm_dx"]  = e.norm_dx;
   d["norm_dy"]  = e.norm_dy;
   return d;
}

py::dict profile_dict(const SlopeProfile& p)
{
   py::dict d;
   for(const auto& e : p.entries) d[py::str(e.pair_id)] = entry_dict(e);
   return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
   m.doc() = "Pose comparison core: slope profiles, feedback and sessions";

   static py::exception<Error> error(m, "FittutorError", PyExc_ValueError);
   py::register_exception_translator([](std::exception_ptr p) {
      try {
         if(p) std::rethrow_exception(p);
      } catch(const Error& e) {
         // args = (code, message)
         PyErr_SetObject(error.ptr(), py::make_tuple(std::string(str(e.code())), e.what()).ptr());
      }
   });

   m.attr("BODY_PARTS") = [] {
      py::list l;
      for(auto p : k_all_body_parts) l.append(std::string(str(p)));
      return l;
   }();

   py::class_<PoseFrame>(m, "Frame")
       .def(py::init(&make_frame), py::arg("t"), py::arg("width"), py::arg("height"),
            py::arg("keypoints"),
            "keypoints: (part, x, y, score) tuples covering all 17 parts, any order")
       .def_static("from_json", &parse_frame, py::arg("text"))
       .def_static(
           "from_external",
           [](const std::string& text, double w, double h) {
              return adapt_external_keypoints(text, {w, h});
           },
           py::arg("text"), py::arg("default_width") = 640.0, py::arg("default_height") = 480.0)
       .def("to_json", &serialize_frame)
       .def_property_readonly("t", &PoseFrame::timestamp_ms)
       .def_property_readonly("width", &PoseFrame::width)
       .def_property_readonly("height", &PoseFrame::height)
       .def(
           "keypoint",
           [](const PoseFrame& f, const std::string& part) {
              const auto& k = f[part_arg(part)];
              return std::make_tuple(k.x, k.y, k.score);
           },
           py::arg("part"))
       .def("mirror", &mirror_frame)
       .def("translate", &translate_frame, py::arg("dx"), py::arg("dy"))
       .def(
           "scale",
           [](const PoseFrame& f, double s, double ox, double oy) {
              return scale_frame(f, s, {ox, oy});
           },
           py::arg("s"), py::arg("ox") = 0.0, py::arg("oy") = 0.0)
       .def(py::self == py::self);

   py::class_<ComparisonConfig>(m, "ComparisonConfig")
       .def(py::init(&make_config), py::arg("pair_set") = "table2", py::arg("tolerance") = 0.5,
            py::arg("min_score") = 0.5, py::arg("mode") = "slope",
            py::arg("angle_tolerance_deg") = 15.0)
       .def_readonly("tolerance", &ComparisonConfig::tolerance)
       .def_readonly("min_score", &ComparisonConfig::min_score)
       .def_readonly("angle_tolerance_deg", &ComparisonConfig::angle_tolerance_deg)
       .def_property_readonly("pair_set",
                              [](const ComparisonConfig& c) { return std::string(str(c.pair_set)); })
       .def_property_readonly("mode",
                              [](const ComparisonConfig& c) { return std::string(str(c.mode)); })
       .def_property_readonly("pair_ids",
                              [](const ComparisonConfig& c) {
                                 std::vector<std::string> ids;
                                 for(const auto& p : c.pairs) ids.push_back(p.id);
                                 return ids;
                              })
       .def("to_json", [](const ComparisonConfig& c) { return config_to_json(c).dump(); })
       .def_static("from_json",
                   [](const std::string& text) { return config_from_json(parse_json(text)); })
       .def(py::self == py::self);

   py::class_<ReferencePose>(m, "Reference")
       .def_readonly("name", &ReferencePose::name)
       .def_readonly("frame", &ReferencePose::frame)
       .def_readonly("config", &ReferencePose::config)
       .def_property_readonly("profile",
                              [](const ReferencePose& r) { return profile_dict(r.profile); })
       .def("to_json", &serialize_reference)
       .def_static("from_json", &parse_reference, py::arg("text"))
       .def("with_config", &with_config, py::arg("config"));

   m.def("make_reference", &make_reference, py::arg("name"), py::arg("frame"),
         py::arg("config") = ComparisonConfig{});

   m.def(
       "extract_profile",
       [](const PoseFrame& f, const ComparisonConfig& c) { return profile_dict(extract_profile(f, c)); },
       py::arg("frame"), py::arg("config") = ComparisonConfig{});

   m.def(
       "compute_slope",
       [](double x1, double y1, double x2, double y2) -> py::object {
          const auto o = compute_slope({x1, y1}, {x2, y2});
          if(o.is_vertical()) return py::str("vertical");
          return py::float_(o.slope());
       },
       py::arg("x1"), py::arg("y1"), py::arg("x2"), py::arg("y2"),
       "dy/dx of the segment, or 'vertical'");

   py::class_<PairFeedback>(m, "PairFeedback")
       .def_readonly("pair_id", &PairFeedback::pair_id)
       .def_property_readonly("status", [](const PairFeedback& p) { return std::string(str(p.status)); })
       .def_readonly("deviation", &PairFeedback::deviation);

   py::class_<Feedback>(m, "Feedback")
       .def_readonly("t", &Feedback::timestamp_ms)
       .def_readonly("pairs", &Feedback::pairs)
       .def(
           "status",
           [](const Feedback& f, const std::string& id) -> std::optional<std::string> {
              if(const auto* p = f.find(id)) return std::string(str(p->status));
              return std::nullopt;
           },
           py::arg("pair_id"))
       .def("to_json", &serialize_feedback)
       .def_static("from_json", &parse_feedback, py::arg("text"))
       .def(py::self == py::self);

   m.def(
       "compare",
       [](const ReferencePose& ref, const PoseFrame& frame) {
          return compare_profiles(ref.profile, extract_profile(frame, ref.config), ref.config);
       },
       py::arg("reference"), py::arg("frame"),
       "Per-pair feedback for one frame under the reference's own config");

   py::class_<PairTally>(m, "PairTally")
       .def_readonly("match_frames", &PairTally::match_frames)
       .def_readonly("correction_frames", &PairTally::correction_frames)
       .def_readonly("not_visible_frames", &PairTally::not_visible_frames);

   py::class_<SessionReport>(m, "SessionReport")
       .def_readonly("frames_processed", &SessionReport::frames_processed)
       .def_readonly("frames_usable", &SessionReport::frames_usable)
       .def_readonly("full_match_frames", &SessionReport::full_match_frames)
       .def_readonly("per_pair", &SessionReport::per_pair)
       .def("to_json", &serialize_report)
       .def_static("from_json", &parse_report, py::arg("text"))
       .def(py::self == py::self);

   py::class_<Session>(m, "Session")
       .def(py::init([](const ReferencePose& ref, int debounce_frames) {
               return Session(ref, SessionConfig{ref.config, debounce_frames});
            }),
            py::arg("reference"), py::arg("debounce_frames") = 0)
       .def("push", &Session::push, py::arg("frame"))
       .def_property_readonly("report", &Session::report);

   m.def(
       "process_stream",
       [](const std::vector<PoseFrame>& frames, const ReferencePose& ref, int debounce_frames) {
          auto r = process_stream(frames, ref, SessionConfig{ref.config, debounce_frames});
          return std::make_pair(std::move(r.feedback), r.report);
       },
       py::arg("frames"), py::arg("reference"), py::arg("debounce_frames") = 0);
}
