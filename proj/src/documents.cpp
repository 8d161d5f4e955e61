#include "fittutor/documents.hpp"
#include "fittutor/error.hpp"


namespace fittutor
{
namespace
{
   [[noreturn]] void malformed(const std::string& msg)
   {
      throw Error(ErrorCode::MalformedDocument, msg);
   }

   const Json& member(const Json& j, const char* key, const char* where)
   {
      if(!j.is_object()) malformed(std::string(where) + " must be an object");
      auto ii = j.find(key);
      if(ii == j.end())
         malformed(std::string(where) + " is missing \"" + key + "\"");
      return *ii;
   }

   const Json* optional_member(const Json& j, const char* key)
   {
      auto ii = j.find(key);
      return ii == j.end() ? nullptr : &*ii;
   }

   double as_number(const Json& j, const char* what)
   {
      if(!j.is_number()) malformed(std::string(what) + " must be a number");
      return j.get<double>();
   }

   std::int64_t as_int(const Json& j, const char* what)
   {
      if(!j.is_number_integer())
         malformed(std::string(what) + " must be an integer");
      return j.get<std::int64_t>();
   }

   std::size_t as_count(const Json& j, const char* what)
   {
      if(!j.is_number_unsigned())
         malformed(std::string(what) + " must be a non-negative integer");
      return j.get<std::size_t>();
   }

   const std::string& as_string(const Json& j, const char* what)
   {
      if(!j.is_string()) malformed(std::string(what) + " must be a string");
      return j.get_ref<const std::string&>();
   }

   bool as_bool(const Json& j, const char* what)
   {
      if(!j.is_boolean()) malformed(std::string(what) + " must be a boolean");
      return j.get<bool>();
   }

   BodyPart as_part(const Json& j)
   {
      const auto& name = as_string(j, "part");
      auto part        = to_body_part(name);
      if(!part)
         throw Error(ErrorCode::UnknownPartName,
                     "unknown body part \"" + name + "\"");
      return *part;
   }

   std::vector<Keypoint> keypoint_list(const Json& list, bool external)
   {
      if(!list.is_array()) malformed("keypoints must be an array");
      std::vector<Keypoint> kps;
      kps.reserve(list.size());
      for(const auto& e : list) {
         Keypoint k;
         k.part = as_part(member(e, "part", "keypoint"));
         const Json& pos = external ? member(e, "position", "keypoint") : e;
         k.x     = as_number(member(pos, "x", "keypoint"), "x");
         k.y     = as_number(member(pos, "y", "keypoint"), "y");
         k.score = as_number(member(e, "score", "keypoint"), "score");
         kps.push_back(k);
      }
      return kps;
   }

   // NaN/inf would be written as null; validated values never carry them.
   Json number(double v) { return Json(v); }

   Json orientation_to_json(const std::optional<LimbOrientation>& o)
   {
      if(!o) return nullptr;
      if(o->is_vertical()) return "vertical";
      return number(o->slope());
   }

   Json pair_to_json(const JointPair& p)
   {
      Json j;
      j["id"]        = p.id;
      j["proximal"]  = str(p.proximal);
      j["distal"]    = str(p.distal);
      j["limbClass"] = str(p.limb_class);
      return j;
   }

   JointPair pair_from_json(const Json& j)
   {
      JointPair p;
      p.id       = as_string(member(j, "id", "pair"), "id");
      p.proximal = as_part(member(j, "proximal", "pair"));
      p.distal   = as_part(member(j, "distal", "pair"));
      const auto& cls = as_string(member(j, "limbClass", "pair"), "limbClass");
      if(cls == "arm")
         p.limb_class = LimbClass::Arm;
      else if(cls == "leg")
         p.limb_class = LimbClass::Leg;
      else
         malformed("limbClass must be \"arm\" or \"leg\"");
      return p;
   }

   PairSet as_pair_set(const Json& j)
   {
      auto s = to_pair_set(as_string(j, "pairSet"));
      if(!s) malformed("pairSet must be \"table2\" or \"extended\"");
      return *s;
   }

   CompareMode as_mode(const Json& j)
   {
      auto m = to_compare_mode(as_string(j, "mode"));
      if(!m) malformed("mode must be \"slope\" or \"angle\"");
      return *m;
   }

   template<typename T> T checked(auto&& fn)
   {
      try {
         return fn();
      } catch(const nlohmann::json::exception& e) {
         malformed(e.what());
      }
   }
} // namespace

Json parse_json(std::string_view text)
{
   try {
      return Json::parse(text.begin(), text.end());
   } catch(const nlohmann::json::parse_error& e) {
      malformed(e.what());
   }
}

// ---------------------------------------------------------------- frame

Json frame_to_json(const PoseFrame& f)
{
   Json j;
   j["t"] = f.timestamp_ms();
   j["w"] = number(f.width());
   j["h"] = number(f.height());
   Json kps = Json::array();
   for(const auto& k : f.keypoints()) {
      Json e;
      e["part"]  = str(k.part);
      e["x"]     = number(k.x);
      e["y"]     = number(k.y);
      e["score"] = number(k.score);
      kps.push_back(std::move(e));
   }
   j["keypoints"] = std::move(kps);
   return j;
}

PoseFrame frame_from_json(const Json& j)
{
   return checked<PoseFrame>([&] {
      const auto t   = as_int(member(j, "t", "frame"), "t");
      const double w = as_number(member(j, "w", "frame"), "w");
      const double h = as_number(member(j, "h", "frame"), "h");
      const auto kps = keypoint_list(member(j, "keypoints", "frame"), false);
      return PoseFrame::from_unordered(t, w, h, kps);
   });
}

std::string serialize_frame(const PoseFrame& f) { return frame_to_json(f).dump(); }

PoseFrame parse_frame(std::string_view text)
{
   return frame_from_json(parse_json(text));
}

// ------------------------------------------------------- external export

PoseFrame adapt_external_keypoints(std::string_view text,
                                   const AdapterOptions& options)
{
   const Json doc = parse_json(text);
   return checked<PoseFrame>([&] {
      const Json* list = &doc;
      std::int64_t t   = 0;
      double w         = options.default_width;
      double h         = options.default_height;
      if(doc.is_object()) {
         if(auto* v = optional_member(doc, "timestamp")) t = as_int(*v, "timestamp");
         if(auto* v = optional_member(doc, "width")) w = as_number(*v, "width");
         if(auto* v = optional_member(doc, "height")) h = as_number(*v, "height");
         const Json* holder = &doc;
         if(auto* pose = optional_member(doc, "pose")) holder = pose;
         list = &member(*holder, "keypoints", "export");
      }
      return PoseFrame::from_unordered(t, w, h, keypoint_list(*list, true));
   });
}

// --------------------------------------------------------------- config

Json config_to_json(const ComparisonConfig& c)
{
   Json j;
   j["tolerance"] = number(c.tolerance);
   j["minScore"]  = number(c.min_score);
   j["pairSet"]   = str(c.pair_set);
   Json pairs     = Json::array();
   for(const auto& p : c.pairs) pairs.push_back(pair_to_json(p));
   j["pairs"]             = std::move(pairs);
   j["mode"]              = str(c.mode);
   j["angleToleranceDeg"] = number(c.angle_tolerance_deg);
   return j;
}

ComparisonConfig config_from_json(const Json& j, const ComparisonConfig& base)
{
   auto c = checked<ComparisonConfig>([&] {
      if(!j.is_object()) malformed("config must be an object");
      ComparisonConfig c = base;
      if(auto* v = optional_member(j, "tolerance"))
         c.tolerance = as_number(*v, "tolerance");
      if(auto* v = optional_member(j, "minScore"))
         c.min_score = as_number(*v, "minScore");
      if(auto* v = optional_member(j, "pairSet")) {
         c.pair_set = as_pair_set(*v);
         c.pairs    = make_pairs(c.pair_set);
      }
      if(auto* v = optional_member(j, "pairs")) {
         if(!v->is_array()) malformed("pairs must be an array");
         c.pairs.clear();
         for(const auto& p : *v) c.pairs.push_back(pair_from_json(p));
      }
      if(auto* v = optional_member(j, "mode")) c.mode = as_mode(*v);
      if(auto* v = optional_member(j, "angleToleranceDeg"))
         c.angle_tolerance_deg = as_number(*v, "angleToleranceDeg");
      return c;
   });
   c.validate();
   return c;
}

SessionConfig SessionOverrides::apply(const ComparisonConfig& base) const
{
   SessionConfig s;
   s.comparison = base;
   auto& c      = s.comparison;
   if(tolerance) c.tolerance = *tolerance;
   if(min_score) c.min_score = *min_score;
   if(pair_set) {
      c.pair_set = *pair_set;
      c.pairs    = make_pairs(*pair_set);
   }
   if(mode) c.mode = *mode;
   if(angle_tolerance_deg) c.angle_tolerance_deg = *angle_tolerance_deg;
   s.debounce_frames = debounce_frames.value_or(0);
   s.validate();
   return s;
}

SessionOverrides overrides_from_json(const Json& j)
{
   return checked<SessionOverrides>([&] {
      if(!j.is_object()) malformed("session config must be an object");
      SessionOverrides o;
      if(auto* c = optional_member(j, "comparison")) {
         if(!c->is_object()) malformed("comparison must be an object");
         if(auto* v = optional_member(*c, "tolerance"))
            o.tolerance = as_number(*v, "tolerance");
         if(auto* v = optional_member(*c, "minScore"))
            o.min_score = as_number(*v, "minScore");
         if(auto* v = optional_member(*c, "pairSet")) o.pair_set = as_pair_set(*v);
         if(auto* v = optional_member(*c, "mode")) o.mode = as_mode(*v);
         if(auto* v = optional_member(*c, "angleToleranceDeg"))
            o.angle_tolerance_deg = as_number(*v, "angleToleranceDeg");
      }
      if(auto* v = optional_member(j, "debounceFrames"))
         o.debounce_frames = static_cast<int>(as_int(*v, "debounceFrames"));
      if(auto* v = optional_member(j, "mirror")) o.mirror = as_bool(*v, "mirror");
      return o;
   });
}

Json session_config_to_json(const SessionConfig& s, bool mirror)
{
   Json j;
   j["comparison"]     = config_to_json(s.comparison);
   j["debounceFrames"] = s.debounce_frames;
   j["mirror"]         = mirror;
   return j;
}

// ------------------------------------------------------------ reference

Json profile_to_json(const SlopeProfile& p)
{
   Json j = Json::object();
   for(const auto& e : p.entries) {
      Json v;
      v["slope"]    = orientation_to_json(e.orientation);
      v["valid"]    = e.valid;
      j[e.pair_id] = std::move(v);
   }
   return j;
}

Json reference_to_json(const ReferencePose& r)
{
   Json j;
   j["name"]    = r.name;
   j["frame"]   = frame_to_json(r.frame);
   j["config"]  = config_to_json(r.config);
   j["profile"] = profile_to_json(r.profile);
   return j;
}

ReferencePose reference_from_json(const Json& j)
{
   const auto& name = as_string(member(j, "name", "reference"), "name");
   return make_reference(name,
                         frame_from_json(member(j, "frame", "reference")),
                         config_from_json(member(j, "config", "reference")));
}

std::string serialize_reference(const ReferencePose& r)
{
   return reference_to_json(r).dump();
}

ReferencePose parse_reference(std::string_view text)
{
   return reference_from_json(parse_json(text));
}

// ------------------------------------------------------------- feedback

Json feedback_to_json(const Feedback& f)
{
   Json j;
   j["t"]     = f.timestamp_ms;
   Json pairs = Json::object();
   for(const auto& p : f.pairs) {
      Json v;
      v["status"] = str(p.status);
      if(p.deviation) v["deviation"] = number(*p.deviation);
      pairs[p.pair_id] = std::move(v);
   }
   j["pairs"] = std::move(pairs);
   return j;
}

Feedback feedback_from_json(const Json& j)
{
   return checked<Feedback>([&] {
      Feedback f;
      f.timestamp_ms     = as_int(member(j, "t", "feedback"), "t");
      const Json& pairs  = member(j, "pairs", "feedback");
      if(!pairs.is_object()) malformed("feedback pairs must be an object");
      for(const auto& [id, v] : pairs.items()) {
         PairFeedback p;
         p.pair_id        = id;
         const auto& name = as_string(member(v, "status", "pair feedback"), "status");
         auto st          = to_status(name);
         if(!st) malformed("unknown status \"" + name + "\"");
         p.status = *st;
         if(auto* d = optional_member(v, "deviation"))
            p.deviation = as_number(*d, "deviation");
         f.pairs.push_back(std::move(p));
      }
      return f;
   });
}

std::string serialize_feedback(const Feedback& f)
{
   return feedback_to_json(f).dump();
}

Feedback parse_feedback(std::string_view text)
{
   return feedback_from_json(parse_json(text));
}

// --------------------------------------------------------------- report

Json report_to_json(const SessionReport& r)
{
   Json j;
   j["framesProcessed"] = r.frames_processed;
   j["framesUsable"]    = r.frames_usable;
   j["fullMatchFrames"] = r.full_match_frames;
   Json per_pair        = Json::object();
   for(const auto& [id, t] : r.per_pair) {
      Json v;
      v["matchFrames"]      = t.match_frames;
      v["correctionFrames"] = t.correction_frames;
      v["notVisibleFrames"] = t.not_visible_frames;
      per_pair[id]          = std::move(v);
   }
   j["perPair"] = std::move(per_pair);
   return j;
}

SessionReport report_from_json(const Json& j)
{
   return checked<SessionReport>([&] {
      SessionReport r;
      r.frames_processed
          = as_count(member(j, "framesProcessed", "report"), "framesProcessed");
      r.frames_usable = as_count(member(j, "framesUsable", "report"), "framesUsable");
      r.full_match_frames
          = as_count(member(j, "fullMatchFrames", "report"), "fullMatchFrames");
      const Json& per_pair = member(j, "perPair", "report");
      if(!per_pair.is_object()) malformed("perPair must be an object");
      for(const auto& [id, v] : per_pair.items()) {
         PairTally t;
         t.match_frames = as_count(member(v, "matchFrames", "tally"), "matchFrames");
         t.correction_frames
             = as_count(member(v, "correctionFrames", "tally"), "correctionFrames");
         t.not_visible_frames
             = as_count(member(v, "notVisibleFrames", "tally"), "notVisibleFrames");
         r.per_pair[id] = t;
      }
      return r;
   });
}

std::string serialize_report(const SessionReport& r)
{
   return report_to_json(r).dump();
}

SessionReport parse_report(std::string_view text)
{
   return report_from_json(parse_json(text));
}

} // namespace fittutor
