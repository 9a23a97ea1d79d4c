package com.example.music;

import android.media.MediaPlayer;

public class LoopStation {
    MediaPlayer deck;

    void jam(Context context) {
        deck = MediaPlayer.create(context, R.raw.loop);
        deck.setLooping(true);
        deck.start();
    }
}
