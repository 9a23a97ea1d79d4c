package com.example.dating;

import com.google.android.exoplayer.ExoPlayer;
import com.google.android.gms.ads.InterstitialAd;

public class MatchFeed {
    ExoPlayer player;
    InterstitialAd interstitial;

    void roll() {
        interstitial.show();
    }
}
