#include "scenesem/sth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace scenesem {

std::string_view label(ObjectKind kind) {
  switch (kind) {
    case ObjectKind::person: return "person";
    case ObjectKind::object: return "object";
    case ObjectKind::robot: return "robot";
    case ObjectKind::body_part: return "body_part";
    case ObjectKind::floorplan_structure: return "floorplan_structure";
  }
  return "?";
}

std::optional<ObjectKind> parse_object_kind(std::string_view s) {
  for (auto k : {ObjectKind::person, ObjectKind::object, ObjectKind::robot, ObjectKind::body_part,
                 ObjectKind::floorplan_structure})
    if (label(k) == s) return k;
  return std::nullopt;
}

bool is_joint_name(std::string_view name) {
  return std::find(kJointNames.begin(), kJointNames.end(), name) != kJointNames.end();
}

std::string body_part_id(std::string_view person, std::string_view joint) {
  std::string id(person);
  id += '/';
  id += joint;
  return id;
}

// ---------------------------------------------------------------------------

SpatialEntity interpolate(const SpatialEntity& a, const SpatialEntity& b, double s) {
  if (a.index() != b.index() || kind_of(a) != kind_of(b))
    throw Error(Errc::InvalidEntity, "cannot interpolate between different entity kinds");
  const SpatialEntity& nearer = s < 0.5 ? a : b;
  switch (a.index()) {
    case 0:
      return lerp(std::get<Point2>(a), std::get<Point2>(b), s);
    case 1:
      return lerp(std::get<Point3>(a), std::get<Point3>(b), s);
    case 2: {
      const auto& oa = std::get<OrientedPoint>(a);
      const auto& ob = std::get<OrientedPoint>(b);
      const Vec3 v = lerp(oa.v, ob.v, s);
      if (norm(v) < kGeomEps) return nearer;
      return OrientedPoint{lerp(oa.p, ob.p, s), normalized(v)};
    }
    case 3: {
      const auto& sa = std::get<Segment>(a);
      const auto& sb = std::get<Segment>(b);
      return Segment{lerp(sa.p1, sb.p1, s), lerp(sa.p2, sb.p2, s)};
    }
    case 4: {
      const auto& la = std::get<Polyline>(a);
      const auto& lb = std::get<Polyline>(b);
      if (la.vertices.size() != lb.vertices.size()) return nearer;
      Polyline out;
      for (std::size_t i = 0; i < la.vertices.size(); ++i)
        out.vertices.push_back(lerp(la.vertices[i], lb.vertices[i], s));
      return out;
    }
    case 5: {
      const auto& pa = std::get<Polygon2>(a).vertices();
      const auto& pb = std::get<Polygon2>(b).vertices();
      if (pa.size() != pb.size()) return nearer;
      std::vector<Point2> v;
      for (std::size_t i = 0; i < pa.size(); ++i) v.push_back(lerp(pa[i], pb[i], s));
      try {
        return validate_polygon(v);
      } catch (const Error&) {
        return nearer;
      }
    }
    case 6: {
      const auto& ba = std::get<AABox>(a);
      const auto& bb = std::get<AABox>(b);
      AABox out = ba;
      out.min = lerp(ba.min, bb.min, s);
      out.max = lerp(ba.max, bb.max, s);
      return out;
    }
    default: {
      const auto& sa = std::get<Sphere>(a);
      const auto& sb = std::get<Sphere>(b);
      Sphere out = sa;
      out.center = lerp(sa.center, sb.center, s);
      out.radius = sa.radius + s * (sb.radius - sa.radius);
      return out;
    }
  }
}

SpaceTimeHistory::SpaceTimeHistory(std::vector<TimedEntity> samples) : samples_(std::move(samples)) {
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    if (!std::isfinite(samples_[i].t)) throw Error(Errc::InvalidEntity, "non-finite timestamp");
    validate(samples_[i].entity);
    if (i == 0) continue;
    if (!(samples_[i].t > samples_[i - 1].t))
      throw Error(Errc::InvalidEntity, "history timestamps must strictly increase");
    if (kind_of(samples_[i].entity) != kind_of(samples_[0].entity))
      throw Error(Errc::InvalidEntity, "history mixes entity kinds");
  }
}

SpaceTimeHistory SpaceTimeHistory::constant(SpatialEntity entity) {
  validate(entity);
  SpaceTimeHistory h;
  h.samples_.push_back({0.0, std::move(entity)});
  h.static_ = true;
  return h;
}

double SpaceTimeHistory::start() const {
  if (static_) return -std::numeric_limits<double>::infinity();
  if (samples_.empty()) throw Error(Errc::OutOfRange, "empty history");
  return samples_.front().t;
}

double SpaceTimeHistory::end() const {
  if (static_) return std::numeric_limits<double>::infinity();
  if (samples_.empty()) throw Error(Errc::OutOfRange, "empty history");
  return samples_.back().t;
}

bool SpaceTimeHistory::covers(double t) const {
  if (static_) return true;
  if (samples_.empty()) return false;
  return t >= samples_.front().t - 1e-9 && t <= samples_.back().t + 1e-9;
}

std::optional<std::size_t> SpaceTimeHistory::sample_index(double t, double eps) const {
  if (static_) return 0;
  auto it = std::lower_bound(samples_.begin(), samples_.end(), t - eps,
                             [](const TimedEntity& s, double v) { return s.t < v; });
  if (it != samples_.end() && std::abs(it->t - t) <= eps) return std::size_t(it - samples_.begin());
  return std::nullopt;
}

SpatialEntity SpaceTimeHistory::entity_at(double t) const {
  if (static_) return samples_.front().entity;
  if (!covers(t))
    throw Error(Errc::OutOfRange, "t=" + std::to_string(t) + " outside the recorded span");
  if (auto k = sample_index(t)) return samples_[*k].entity;
  auto hi = std::upper_bound(samples_.begin(), samples_.end(), t,
                             [](double v, const TimedEntity& s) { return v < s.t; });
  auto lo = hi - 1;
  const double s = (t - lo->t) / (hi->t - lo->t);
  return interpolate(lo->entity, hi->entity, s);
}

// ---------------------------------------------------------------------------

SceneRecording::SceneRecording(std::vector<SceneTrack> tracks, CoordinateFrame frame,
                               std::optional<double> frame_rate_hint)
    : tracks_(std::move(tracks)), frame_(frame), frame_rate_hint_(frame_rate_hint) {
  std::sort(tracks_.begin(), tracks_.end(),
            [](const SceneTrack& a, const SceneTrack& b) { return a.object.id < b.object.id; });
  for (std::size_t i = 1; i < tracks_.size(); ++i)
    if (tracks_[i].object.id == tracks_[i - 1].object.id)
      throw Error(Errc::InvalidEntity, "duplicate object id '" + tracks_[i].object.id + "'");
  for (const auto& t : tracks_) {
    if (t.object.kind != ObjectKind::body_part) continue;
    if (!t.object.parent || !has(*t.object.parent) ||
        track(*t.object.parent).object.kind != ObjectKind::person)
      throw Error(Errc::InvalidEntity, "body part '" + t.object.id + "' has no person parent");
  }

  std::vector<double> times;
  for (const auto& t : tracks_)
    if (!t.history.is_static())
      for (const auto& s : t.history.samples()) times.push_back(s.t);
  std::sort(times.begin(), times.end());
  for (double t : times)
    if (frame_times_.empty() || t - frame_times_.back() > 1e-9) frame_times_.push_back(t);

  frame_lookup_.resize(tracks_.size());
  for (std::size_t i = 0; i < tracks_.size(); ++i) {
    auto& lookup = frame_lookup_[i];
    const auto& h = tracks_[i].history;
    if (h.is_static()) continue;
    lookup.assign(frame_times_.size(), -1);
    std::size_t k = 0;
    for (std::size_t s = 0; s < h.samples().size(); ++s) {
      while (k < frame_times_.size() && frame_times_[k] < h.samples()[s].t - 1e-9) ++k;
      if (k < frame_times_.size()) lookup[k] = static_cast<int>(s);
    }
  }
}

std::size_t SceneRecording::index_of(std::string_view id) const {
  auto it = std::lower_bound(tracks_.begin(), tracks_.end(), id,
                             [](const SceneTrack& t, std::string_view v) { return t.object.id < v; });
  if (it == tracks_.end() || it->object.id != id) return tracks_.size();
  return std::size_t(it - tracks_.begin());
}

bool SceneRecording::has(std::string_view id) const { return index_of(id) < tracks_.size(); }

const SceneTrack& SceneRecording::track(std::string_view id) const {
  const std::size_t i = index_of(id);
  if (i == tracks_.size()) throw Error(Errc::UnknownObject, "no object '" + std::string(id) + "'");
  return tracks_[i];
}

std::vector<std::string> SceneRecording::ids_of_kind(ObjectKind kind) const {
  std::vector<std::string> out;
  for (const auto& t : tracks_)
    if (t.object.kind == kind) out.push_back(t.object.id);
  return out;
}

const SpatialEntity* SceneRecording::at_frame(std::string_view id, std::size_t k) const {
  const std::size_t i = index_of(id);
  if (i == tracks_.size()) throw Error(Errc::UnknownObject, "no object '" + std::string(id) + "'");
  const auto& h = tracks_[i].history;
  if (h.is_static()) return &h.samples().front().entity;
  if (k >= frame_lookup_[i].size()) return nullptr;
  const int s = frame_lookup_[i][k];
  return s < 0 ? nullptr : &h.samples()[static_cast<std::size_t>(s)].entity;
}

std::optional<std::size_t> SceneRecording::frame_index(double t, double eps) const {
  auto it = std::lower_bound(frame_times_.begin(), frame_times_.end(), t - eps);
  if (it != frame_times_.end() && std::abs(*it - t) <= eps) return std::size_t(it - frame_times_.begin());
  return std::nullopt;
}

// ---------------------------------------------------------------------------

namespace {

std::optional<Point3> person_anchor(const BodyPose& pose, double confidence_min) {
  auto confident = [&](std::string_view name) -> const JointObservation* {
    auto it = pose.joints.find(std::string(name));
    if (it == pose.joints.end() || it->second.confidence < confidence_min) return nullptr;
    return &it->second;
  };
  if (const auto* j = confident("spine_base")) return j->position;
  if (const auto* j = confident("spine_mid")) return j->position;
  Vec3 acc;
  int n = 0;
  for (const auto& [name, obs] : pose.joints) {
    if (obs.confidence < confidence_min) continue;
    acc = acc + obs.position;
    ++n;
  }
  if (n == 0) return std::nullopt;
  return (1.0 / n) * acc;
}

}  // namespace

SceneRecording build_scene(std::span<const SceneFrame> frames, const SthConfig& cfg,
                           std::vector<SceneTrack> static_tracks, CoordinateFrame frame) {
  struct Pending {
    DomainObject object;
    std::vector<TimedEntity> samples;
  };
  std::map<std::string, Pending> pending;

  auto add = [&](const DomainObject& obj, double t, SpatialEntity e) {
    auto [it, inserted] = pending.try_emplace(obj.id, Pending{obj, {}});
    auto& samples = it->second.samples;
    if (!samples.empty() && std::abs(samples.back().t - t) <= 1e-9)
      throw Error(Errc::InvalidEntity, "object '" + obj.id + "' observed twice at t=" + std::to_string(t));
    samples.push_back({t, std::move(e)});
  };

  std::vector<const SceneFrame*> ordered;
  for (const auto& f : frames) ordered.push_back(&f);
  std::stable_sort(ordered.begin(), ordered.end(),
                   [](const SceneFrame* a, const SceneFrame* b) { return a->t < b->t; });

  for (const SceneFrame* f : ordered) {
    for (const auto& pose : f->persons) {
      const auto anchor = person_anchor(pose, cfg.confidence_min);
      if (!anchor) continue;
      add(DomainObject{pose.person_id, ObjectKind::person, "person", std::nullopt}, f->t, *anchor);
      for (const auto& [joint, obs] : pose.joints) {
        if (obs.confidence < cfg.confidence_min) continue;
        add(DomainObject{body_part_id(pose.person_id, joint), ObjectKind::body_part, joint, pose.person_id},
            f->t, obs.position);
      }
    }
    for (const auto& obj : f->objects)
      add(DomainObject{obj.id, obj.kind, obj.class_label, std::nullopt}, f->t, obj.entity);
  }

  std::vector<SceneTrack> tracks = std::move(static_tracks);
  for (auto& [id, p] : pending)
    tracks.push_back(SceneTrack{std::move(p.object), SpaceTimeHistory(std::move(p.samples))});
  return SceneRecording(std::move(tracks), frame);
}

SceneRecording time_reversed(const SceneRecording& scene) {
  if (scene.empty()) return scene;
  const double pivot = scene.frame_times().front() + scene.frame_times().back();
  std::vector<SceneTrack> tracks;
  for (const auto& t : scene.tracks()) {
    if (t.history.is_static()) {
      tracks.push_back(t);
      continue;
    }
    std::vector<TimedEntity> samples;
    const auto& src = t.history.samples();
    for (auto it = src.rbegin(); it != src.rend(); ++it) samples.push_back({pivot - it->t, it->entity});
    tracks.push_back(SceneTrack{t.object, SpaceTimeHistory(std::move(samples))});
  }
  return SceneRecording(std::move(tracks), scene.frame(), scene.frame_rate_hint());
}

// ---------------------------------------------------------------------------

Point3 position(const SpaceTimeHistory& h, double t) { return centroid(h.entity_at(t)); }

double size_at(const SpaceTimeHistory& h, double t) { return size(h.entity_at(t)); }

double distance_at(const SpaceTimeHistory& a, const SpaceTimeHistory& b, double t) {
  return distance(a.entity_at(t), b.entity_at(t));
}

double angle_at(const SpaceTimeHistory& a, const SpaceTimeHistory& b, double t) {
  return angle_between(a.entity_at(t), b.entity_at(t));
}

double movement_velocity(const SpaceTimeHistory& h, double t1, double t2) {
  if (!(t1 < t2)) throw Error(Errc::BadInterval, "movement needs t1 < t2");
  return norm(position(h, t2) - position(h, t1)) / (t2 - t1);
}

Vec3 movement_direction(const SpaceTimeHistory& h, double t1, double t2, double eps_move) {
  if (!(t1 < t2)) throw Error(Errc::BadInterval, "movement needs t1 < t2");
  const Vec3 d = position(h, t2) - position(h, t1);
  if (norm(d) <= eps_move)
    throw Error(Errc::NoSignificantMotion, "net displacement below " + std::to_string(eps_move) + " m");
  return normalized(d);
}

namespace {

Vec2 principal_axis(const std::vector<Point2>& pts, bool* undirected) {
  Point2 mean;
  for (const auto& p : pts) mean = mean + p;
  mean = (1.0 / static_cast<double>(pts.size())) * mean;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& p : pts) {
    const Vec2 d = p - mean;
    sxx += d.x * d.x;
    sxy += d.x * d.y;
    syy += d.y * d.y;
  }
  const double spread = std::hypot(sxx - syy, 2.0 * sxy);
  if (spread <= 1e-12 * (sxx + syy) || sxx + syy <= 0.0)
    throw Error(Errc::OrientationUndefined, "shape has no dominant axis");
  if (undirected) *undirected = true;
  const double angle = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Vec2 orientation_axis(const SpatialEntity& e, bool* undirected) {
  if (undirected) *undirected = false;
  if (const auto* o = std::get_if<OrientedPoint>(&e)) {
    if (norm(xy(o->v)) < kGeomEps) throw Error(Errc::OrientationUndefined, "heading is vertical");
    return normalized(xy(o->v));
  }
  if (const auto* s = std::get_if<Segment>(&e)) {
    if (norm(xy(s->p2 - s->p1)) < kGeomEps) throw Error(Errc::OrientationUndefined, "segment is vertical");
    return normalized(xy(s->p2 - s->p1));
  }
  if (const auto* p = std::get_if<Polygon2>(&e)) return principal_axis(p->vertices(), undirected);
  if (const auto* b = std::get_if<AABox>(&e)) {
    return principal_axis({{b->min.x, b->min.y}, {b->max.x, b->min.y}, {b->max.x, b->max.y}, {b->min.x, b->max.y}},
                          undirected);
  }
  if (const auto* l = std::get_if<Polyline>(&e)) {
    std::vector<Point2> pts;
    for (const auto& v : l->vertices) pts.push_back(xy(v));
    return principal_axis(pts, undirected);
  }
  throw Error(Errc::OrientationUndefined,
              std::string(kind_name(kind_of(e))) + " carries no orientation");
}

double rotation(const SpaceTimeHistory& h, double t1, double t2) {
  bool undirected = false;
  const Vec2 a = orientation_axis(h.entity_at(t1), &undirected);
  Vec2 b = orientation_axis(h.entity_at(t2));
  if (undirected && dot(a, b) < 0.0) b = -1.0 * b;
  double angle = std::atan2(cross(a, b), dot(a, b));
  if (angle <= -std::numbers::pi) angle = std::numbers::pi;
  return angle;
}

Point3 position(const SceneRecording& scene, std::string_view id, double t) {
  return position(scene.track(id).history, t);
}

double distance_at(const SceneRecording& scene, std::string_view a, std::string_view b, double t) {
  return distance_at(scene.track(a).history, scene.track(b).history, t);
}

}  // namespace scenesem
