package com.example.promo;

import com.google.android.gms.ads.AdView;
import com.google.android.gms.ads.AdRequest;

public class BannerScreen {
    AdView banner;

    void load() {
        banner.loadAd(new AdRequest.Builder().build());
    }
}
