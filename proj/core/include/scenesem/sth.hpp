#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scenesem/geometry.hpp"

namespace scenesem {

enum class ObjectKind { person, object, robot, body_part, floorplan_structure };

std::string_view label(ObjectKind kind);
std::optional<ObjectKind> parse_object_kind(std::string_view s);

struct DomainObject {
  std::string id;
  ObjectKind kind = ObjectKind::object;
  std::string class_label;
  std::optional<std::string> parent;  // body_part -> person
};

/// Fixed 25-joint skeleton schema of the capture device.
inline constexpr std::array<std::string_view, 25> kJointNames = {
    "spine_base",     "spine_mid",     "neck",           "head",        "shoulder_left",
    "elbow_left",     "wrist_left",    "hand_left",      "shoulder_right", "elbow_right",
    "wrist_right",    "hand_right",    "hip_left",       "knee_left",   "ankle_left",
    "foot_left",      "hip_right",     "knee_right",     "ankle_right", "foot_right",
    "spine_shoulder", "hand_tip_left", "thumb_left",     "hand_tip_right", "thumb_right",
};
bool is_joint_name(std::string_view name);

/// Identifier of a body-part track, e.g. body_part_id("p1", "hand_right") == "p1/hand_right".
std::string body_part_id(std::string_view person, std::string_view joint);

struct JointObservation {
  Point3 position;
  double confidence = 1.0;
};

struct BodyPose {
  std::string person_id;
  std::map<std::string, JointObservation> joints;
};

struct ObjectObservation {
  std::string id;
  std::string class_label;
  ObjectKind kind = ObjectKind::object;
  SpatialEntity entity;
};

/// One time-stamped observation of the scene (the JSON-lines wire record).
struct SceneFrame {
  double t = 0.0;
  std::vector<BodyPose> persons;
  std::vector<ObjectObservation> objects;
};

struct TimedEntity {
  double t;
  SpatialEntity entity;
};

/// Linear interpolation of corresponding vertices / corners. Entities whose
/// vertex structure differs snap to the nearer operand.
SpatialEntity interpolate(const SpatialEntity& a, const SpatialEntity& b, double s);

/// Time-ordered samples of one object's spatial extent.
class SpaceTimeHistory {
 public:
  SpaceTimeHistory() = default;
  /// Throws InvalidEntity unless timestamps strictly increase and all samples
  /// share one entity kind.
  explicit SpaceTimeHistory(std::vector<TimedEntity> samples);
  /// A history that holds the same entity at every time (floor-plan structures).
  static SpaceTimeHistory constant(SpatialEntity entity);

  bool is_static() const noexcept { return static_; }
  bool empty() const noexcept { return samples_.empty(); }
  const std::vector<TimedEntity>& samples() const noexcept { return samples_; }
  double start() const;
  double end() const;
  bool covers(double t) const;

  /// Throws OutOfRange outside [start, end]. Exact at sample times.
  SpatialEntity entity_at(double t) const;
  /// Index of the sample recorded at t (within eps), if any.
  std::optional<std::size_t> sample_index(double t, double eps = 1e-9) const;

 private:
  std::vector<TimedEntity> samples_;
  bool static_ = false;
};

struct SceneTrack {
  DomainObject object;
  SpaceTimeHistory history;
};

enum class CoordinateFrame { sensor, map };

struct SthConfig {
  double confidence_min = 0.3;  // joints below this are treated as missing
  double eps_move = 0.02;       // m
};

/// Immutable set of histories sharing one coordinate frame and a common
/// frame timeline (the union of all sample times).
class SceneRecording {
 public:
  SceneRecording() = default;
  /// Throws InvalidEntity on duplicate ids or dangling body-part parents.
  SceneRecording(std::vector<SceneTrack> tracks, CoordinateFrame frame = CoordinateFrame::sensor,
                 std::optional<double> frame_rate_hint = std::nullopt);

  const std::vector<double>& frame_times() const noexcept { return frame_times_; }
  const std::vector<SceneTrack>& tracks() const noexcept { return tracks_; }
  CoordinateFrame frame() const noexcept { return frame_; }
  std::optional<double> frame_rate_hint() const noexcept { return frame_rate_hint_; }
  bool empty() const noexcept { return frame_times_.empty(); }

  bool has(std::string_view id) const;
  /// Throws UnknownObject.
  const SceneTrack& track(std::string_view id) const;
  std::vector<std::string> ids_of_kind(ObjectKind kind) const;

  /// Entity recorded for `id` at frame `k`, or nullopt when the object was
  /// not observed in that frame. Static tracks are present in every frame.
  const SpatialEntity* at_frame(std::string_view id, std::size_t k) const;
  /// Frame index whose time equals t within eps.
  std::optional<std::size_t> frame_index(double t, double eps = 1e-9) const;

 private:
  std::size_t index_of(std::string_view id) const;

  std::vector<SceneTrack> tracks_;
  std::vector<double> frame_times_;
  // frame -> sample index per track, -1 when missing
  std::vector<std::vector<int>> frame_lookup_;
  CoordinateFrame frame_ = CoordinateFrame::sensor;
  std::optional<double> frame_rate_hint_;
};

/// Builds person, body-part and object histories from wire frames. Persons
/// are tracked at their spine base (falling back to the joint mean); every
/// joint above the confidence floor becomes a body-part track.
SceneRecording build_scene(std::span<const SceneFrame> frames, const SthConfig& cfg = {},
                           std::vector<SceneTrack> static_tracks = {},
                           CoordinateFrame frame = CoordinateFrame::sensor);

/// Mirrors every timestamp about the midpoint of the recording span.
SceneRecording time_reversed(const SceneRecording& scene);

// Property functions over histories.
Point3 position(const SpaceTimeHistory& h, double t);
double size_at(const SpaceTimeHistory& h, double t);
double distance_at(const SpaceTimeHistory& a, const SpaceTimeHistory& b, double t);
double angle_at(const SpaceTimeHistory& a, const SpaceTimeHistory& b, double t);
/// Net displacement over (t2 - t1); m/s.
double movement_velocity(const SpaceTimeHistory& h, double t1, double t2);
/// Unit net displacement; throws NoSignificantMotion below eps_move.
Vec3 movement_direction(const SpaceTimeHistory& h, double t1, double t2, double eps_move = 0.02);
/// Signed planar change of the orientation axis, wrapped to (-pi, pi].
double rotation(const SpaceTimeHistory& h, double t1, double t2);

/// Planar orientation axis: oriented-point heading, segment direction, or
/// principal axis of polygon / rectangle / polyline vertices.
Vec2 orientation_axis(const SpatialEntity& e, bool* undirected = nullptr);

// Scene-level conveniences.
Point3 position(const SceneRecording& scene, std::string_view id, double t);
double distance_at(const SceneRecording& scene, std::string_view a, std::string_view b, double t);

}  // namespace scenesem
