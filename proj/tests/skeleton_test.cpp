#include "test_support.hpp"

#include "fittutor/error.hpp"
#include "fittutor/skeleton.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <set>

namespace fittutor
{
namespace
{
using namespace fittutor::testing;

PoseFrame::Keypoints uniform_keypoints(double x, double y, double score)
{
   PoseFrame::Keypoints kps{};
   for(auto p : k_all_body_parts) kps[index_of(p)] = {p, x, y, score};
   return kps;
}

TEST(BodyPartTest, NamesMatchDetectorOutput)
{
   const std::vector<std::string_view> expected = {
       "nose",       "leftEye",    "rightEye",     "leftEar",   "rightEar",
       "leftShoulder", "rightShoulder", "leftElbow", "rightElbow", "leftWrist",
       "rightWrist", "leftHip",    "rightHip",     "leftKnee",  "rightKnee",
       "leftAnkle",  "rightAnkle"};
   ASSERT_EQ(expected.size(), k_n_body_parts);
   for(std::size_t i = 0; i < k_n_body_parts; ++i) {
      EXPECT_EQ(str(k_all_body_parts[i]), expected[i]);
      EXPECT_EQ(to_body_part(expected[i]), k_all_body_parts[i]);
   }
   EXPECT_FALSE(to_body_part("left_shoulder"));
   EXPECT_FALSE(to_body_part("LeftShoulder"));
   EXPECT_FALSE(to_body_part(""));
}

TEST(BodyPartTest, MirrorPartners)
{
   EXPECT_EQ(mirror_partner(BodyPart::Nose), BodyPart::Nose);
   std::set<BodyPart> partners;
   for(auto p : k_all_body_parts) {
      const auto q = mirror_partner(p);
      EXPECT_EQ(mirror_partner(q), p);
      partners.insert(q);
      if(p == BodyPart::Nose) continue;
      const auto name = std::string(str(p));
      const auto qn   = std::string(str(q));
      if(name.starts_with("left"))
         EXPECT_EQ(qn, "right" + name.substr(4));
      else
         EXPECT_EQ(qn, "left" + name.substr(5));
   }
   EXPECT_EQ(partners.size(), k_n_body_parts);
}

TEST(PoseFrameTest, RejectsBadDimensionsAndScores)
{
   const auto kps = uniform_keypoints(1.0, 1.0, 0.5);
   EXPECT_NO_THROW(PoseFrame(0, 10.0, 10.0, kps));
   EXPECT_THROW(PoseFrame(0, 0.0, 10.0, kps), Error);
   EXPECT_THROW(PoseFrame(0, 10.0, -1.0, kps), Error);

   auto bad = kps;
   bad[3].score = 1.5;
   try {
      PoseFrame(0, 10.0, 10.0, bad);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::OutOfRangeScore);
   }

   bad       = kps;
   bad[3].x  = std::numeric_limits<double>::infinity();
   EXPECT_THROW(PoseFrame(0, 10.0, 10.0, bad), Error);

   bad         = kps;
   bad[3].part = BodyPart::Nose; // out of slot
   EXPECT_THROW(PoseFrame(0, 10.0, 10.0, bad), Error);
}

TEST(PoseFrameTest, OffscreenKeypointsAreAccepted)
{
   const auto kps = uniform_keypoints(-50.0, 900.0, 0.9);
   EXPECT_NO_THROW(PoseFrame(0, 100.0, 100.0, kps));
}

TEST(PoseFrameTest, FromUnorderedDetectsMissingAndDuplicates)
{
   auto kps = uniform_keypoints(1.0, 2.0, 1.0);
   std::vector<Keypoint> list(kps.rbegin(), kps.rend());
   const auto f = PoseFrame::from_unordered(5, 10.0, 10.0, list);
   EXPECT_EQ(f.keypoints(), kps);

   auto missing = list;
   missing.erase(missing.begin()); // rightAnkle
   try {
      PoseFrame::from_unordered(5, 10.0, 10.0, missing);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::MissingPart);
      EXPECT_NE(std::string(e.what()).find("rightAnkle"), std::string::npos);
   }

   auto dup = list;
   dup.push_back(dup.front());
   try {
      PoseFrame::from_unordered(5, 10.0, 10.0, dup);
      FAIL();
   } catch(const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::DuplicatePart);
   }
}

TEST(MirrorFrameTest, SwapsSidesAndReflectsX)
{
   auto kps = uniform_keypoints(50.0, 20.0, 0.7);
   kps[index_of(BodyPart::LeftShoulder)] = {BodyPart::LeftShoulder, 10.0, 50.0, 0.9};
   const PoseFrame f(123, 100.0, 80.0, kps);
   const auto m = mirror_frame(f);

   const auto& rs = m[BodyPart::RightShoulder];
   EXPECT_EQ(rs.x, 90.0);
   EXPECT_EQ(rs.y, 50.0);
   EXPECT_EQ(rs.score, 0.9);

   const auto& nose = m[BodyPart::Nose];
   EXPECT_EQ(nose.x, 50.0);
   EXPECT_EQ(nose.y, 20.0);
   EXPECT_EQ(m.timestamp_ms(), 123);
   EXPECT_EQ(m.width(), 100.0);
}

TEST(MirrorFrameTest, InvolutionPreservesYAndScores)
{
   std::mt19937_64 rng(7);
   for(int i = 0; i < 200; ++i) {
      // Grid coordinates keep width - (width - x) exact.
      const auto f = random_frame(rng, {.grid = true});
      const auto m = mirror_frame(f);
      EXPECT_EQ(mirror_frame(m), f);

      std::vector<double> ys, ym, ss, sm;
      for(const auto& k : f.keypoints()) {
         ys.push_back(k.y);
         ss.push_back(k.score);
      }
      for(const auto& k : m.keypoints()) {
         ym.push_back(k.y);
         sm.push_back(k.score);
      }
      std::ranges::sort(ys);
      std::ranges::sort(ym);
      std::ranges::sort(ss);
      std::ranges::sort(sm);
      EXPECT_EQ(ys, ym);
      EXPECT_EQ(ss, sm);
   }
}

TEST(JointPairTest, PairSets)
{
   const auto t2 = make_pairs(PairSet::Table2);
   ASSERT_EQ(t2.size(), 4u);
   EXPECT_EQ(t2[0], (JointPair{"leftArm", BodyPart::LeftShoulder, BodyPart::LeftElbow,
                               LimbClass::Arm}));
   EXPECT_EQ(t2[1], (JointPair{"rightArm", BodyPart::RightShoulder,
                               BodyPart::RightElbow, LimbClass::Arm}));
   EXPECT_EQ(t2[2], (JointPair{"leftLeg", BodyPart::LeftHip, BodyPart::LeftAnkle,
                               LimbClass::Leg}));
   EXPECT_EQ(t2[3], (JointPair{"rightLeg", BodyPart::RightHip, BodyPart::RightAnkle,
                               LimbClass::Leg}));

   const auto ext = make_pairs(PairSet::Extended);
   ASSERT_EQ(ext.size(), 6u);
   EXPECT_EQ(ext[4].proximal, BodyPart::LeftElbow);
   EXPECT_EQ(ext[4].distal, BodyPart::LeftWrist);
   EXPECT_EQ(ext[5].proximal, BodyPart::RightElbow);
   EXPECT_EQ(ext[5].distal, BodyPart::RightWrist);
   for(const auto& p : ext) EXPECT_NE(p.proximal, p.distal);
}

} // namespace
} // namespace fittutor
