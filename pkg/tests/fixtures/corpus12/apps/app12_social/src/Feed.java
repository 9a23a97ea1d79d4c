package com.example.social;

import com.google.ads.interactivemedia.v3.api.AdsLoader;

public class Feed {
    AdsLoader loader;

    void refresh() {
        loader.requestAds(request);
    }
}
